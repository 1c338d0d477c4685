#pragma once

#include "docergo/errors.hpp"
#include "docergo/linalg.hpp"
#include "docergo/random.hpp"
#include "docergo/digraph.hpp"
#include "docergo/stochastic.hpp"
#include "docergo/doc_channel.hpp"
#include "docergo/ldoi_gates.hpp"
#include "docergo/lambda_map.hpp"
#include "docergo/brickwork.hpp"
