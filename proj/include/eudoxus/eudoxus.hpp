#pragma once

#include "eudoxus/calc.hpp"
#include "eudoxus/cf.hpp"
#include "eudoxus/cf_bridge.hpp"
#include "eudoxus/endo.hpp"
#include "eudoxus/integer.hpp"
#include "eudoxus/localization.hpp"
#include "eudoxus/parser.hpp"
#include "eudoxus/real_ops.hpp"
