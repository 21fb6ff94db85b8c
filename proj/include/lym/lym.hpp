#pragma once

#include "lym/error.hpp"
#include "lym/exact.hpp"
#include "lym/coefficients.hpp"
#include "lym/lattice.hpp"
#include "lym/chains.hpp"
#include "lym/family.hpp"
#include "lym/inequality.hpp"
#include "lym/continuous.hpp"
#include "lym/extremal.hpp"
#include "lym/json_io.hpp"
