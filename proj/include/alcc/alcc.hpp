#pragma once

#include "numeric.hpp"
#include "codec.hpp"
#include "dft_code.hpp"
#include "localization.hpp"
#include "threat.hpp"
#include "bounds.hpp"
#include "assignment.hpp"
#include "harness.hpp"
