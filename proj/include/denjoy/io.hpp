#pragma once

#include "denjoy/io/report.hpp"
#include "denjoy/io/spec_file.hpp"
#include "denjoy/io/text.hpp"
