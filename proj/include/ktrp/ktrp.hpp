#pragma once

#include "ktrp/density.hpp"
#include "ktrp/errors.hpp"
#include "ktrp/experiments.hpp"
#include "ktrp/geometry.hpp"
#include "ktrp/io.hpp"
#include "ktrp/objectives.hpp"
#include "ktrp/sampling.hpp"
#include "ktrp/schemes.hpp"
#include "ktrp/solvers.hpp"
