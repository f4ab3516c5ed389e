/*!
  \file boolfun.hpp
  \brief Umbrella header.
*/

#pragma once

#include "comm.hpp"
#include "extremal.hpp"
#include "families.hpp"
#include "measures.hpp"
#include "serialize.hpp"
#include "spectra.hpp"
#include "truth_table.hpp"
#include "verify.hpp"
