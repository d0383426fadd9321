#pragma once

#include "nagcd/error.hpp"
#include "nagcd/exhaustion.hpp"
#include "nagcd/gcd.hpp"
#include "nagcd/generic_sampling.hpp"
#include "nagcd/laurent_scalar.hpp"
#include "nagcd/multi_index.hpp"
#include "nagcd/padic_rational.hpp"
#include "nagcd/rational.hpp"
#include "nagcd/scalar_concepts.hpp"
#include "nagcd/tate_series.hpp"
#include "nagcd/text_format.hpp"
#include "nagcd/valuation.hpp"
#include "nagcd/weierstrass.hpp"
