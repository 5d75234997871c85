#pragma once

#include "maxsmooth/core.hpp"
#include "maxsmooth/bounds.hpp"
#include "maxsmooth/smoothings.hpp"
#include "maxsmooth/certify.hpp"
#include "maxsmooth/minimax.hpp"
#include "maxsmooth/regret.hpp"
#include "maxsmooth/io.hpp"
