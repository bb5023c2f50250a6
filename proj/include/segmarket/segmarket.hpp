#pragma once

// Core library: everything except JSON I/O and the command-line layer.

#include "segmarket/constructive.hpp"
#include "segmarket/diagnostics.hpp"
#include "segmarket/error.hpp"
#include "segmarket/lp.hpp"
#include "segmarket/matrix.hpp"
#include "segmarket/model.hpp"
#include "segmarket/rational.hpp"
#include "segmarket/render.hpp"
#include "segmarket/transfers.hpp"
#include "segmarket/verdict.hpp"
#include "segmarket/welfare.hpp"
