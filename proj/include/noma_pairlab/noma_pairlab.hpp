#pragma once

#include "noma_pairlab/errors.hpp"
#include "noma_pairlab/core_rates.hpp"
#include "noma_pairlab/bounds.hpp"
#include "noma_pairlab/pairing.hpp"
#include "noma_pairlab/netsim.hpp"
#include "noma_pairlab/sweeps.hpp"
#include "noma_pairlab/io.hpp"
