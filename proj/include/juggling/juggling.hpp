#pragma once

#include "scalar.hpp"
#include "combinat.hpp"
#include "symfun.hpp"
#include "kernel.hpp"
#include "chains.hpp"
#include "linalg.hpp"
#include "infinite.hpp"
#include "sim.hpp"
#include "model.hpp"
#include "io.hpp"
#include "verify.hpp"
