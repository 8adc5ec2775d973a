#pragma once

#include "chainseq/chain.hpp"
#include "chainseq/characterization.hpp"
#include "chainseq/chihara.hpp"
#include "chainseq/errors.hpp"
#include "chainseq/fixedpoint.hpp"
#include "chainseq/pq.hpp"
#include "chainseq/rational.hpp"
#include "chainseq/scalar.hpp"
#include "chainseq/sequences.hpp"
#include "chainseq/serialize.hpp"
