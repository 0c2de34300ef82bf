#pragma once

#include "denjoy/ideals/interval_set.hpp"
#include "denjoy/ideals/prim.hpp"
