#pragma once

#include <srti/core.hpp>
#include <srti/gen.hpp>
#include <srti/io.hpp>
#include <srti/knet.hpp>
#include <srti/personalize.hpp>
#include <srti/solver.hpp>
