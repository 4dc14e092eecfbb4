#pragma once

#include <cubic_sl2/algebra.hpp>
#include <cubic_sl2/diffop.hpp>
#include <cubic_sl2/matrix.hpp>
#include <cubic_sl2/polynomial.hpp>
#include <cubic_sl2/realization.hpp>
#include <cubic_sl2/rep.hpp>
#include <cubic_sl2/scalar.hpp>
