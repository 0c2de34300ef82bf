#pragma once

#include "denjoy/ergodic/crossed.hpp"
#include "denjoy/ergodic/measure.hpp"
#include "denjoy/ergodic/rotation_number.hpp"
#include "denjoy/ergodic/trace.hpp"
