#pragma once

#include "harmonic/bigint.hpp"
#include "harmonic/census.hpp"
#include "harmonic/cyclotomic.hpp"
#include "harmonic/equivalence.hpp"
#include "harmonic/error.hpp"
#include "harmonic/frames.hpp"
#include "harmonic/number_theory.hpp"
#include "harmonic/orbit.hpp"
#include "harmonic/symmetry.hpp"
