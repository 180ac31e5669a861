#pragma once

#include "rnl/cli.hpp"
#include "rnl/config.hpp"
#include "rnl/core.hpp"
#include "rnl/engine.hpp"
#include "rnl/errors.hpp"
#include "rnl/quantum.hpp"
#include "rnl/sampling.hpp"
#include "rnl/serialize.hpp"
#include "rnl/timing.hpp"
