#pragma once

// Everything but report.hpp, which additionally needs nlohmann/json.

#include "latmon/bitset.hpp"
#include "latmon/error.hpp"
#include "latmon/poset.hpp"
#include "latmon/lattice.hpp"
#include "latmon/hom.hpp"
#include "latmon/monad.hpp"
#include "latmon/split.hpp"
#include "latmon/subcarrier.hpp"
#include "latmon/algebra.hpp"
#include "latmon/equivalence.hpp"
#include "latmon/fakir.hpp"
#include "latmon/stone.hpp"
#include "latmon/projective.hpp"
#include "latmon/corpus.hpp"
#include "latmon/latfile.hpp"
#include "latmon/dot.hpp"
