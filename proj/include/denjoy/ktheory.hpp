#pragma once

#include "denjoy/ktheory/gamma_polynomial.hpp"
#include "denjoy/ktheory/ideal_k.hpp"
#include "denjoy/ktheory/k_groups.hpp"
#include "denjoy/ktheory/pairing.hpp"
#include "denjoy/ktheory/pfaffian.hpp"
#include "denjoy/ktheory/skew_matrix.hpp"
#include "denjoy/ktheory/theta.hpp"
