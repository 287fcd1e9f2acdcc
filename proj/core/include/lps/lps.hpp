#pragma once

#include "lps/dynamics.hpp"
#include "lps/error.hpp"
#include "lps/io.hpp"
#include "lps/operator_core.hpp"
#include "lps/orbit.hpp"
#include "lps/poisson.hpp"
#include "lps/random.hpp"
#include "lps/reduction.hpp"
#include "lps/toda.hpp"
