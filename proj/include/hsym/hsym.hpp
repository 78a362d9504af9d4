#pragma once

// Everything except the JSON layer (hsym/io.hpp), which needs nlohmann/json.

#include "hsym/arith.hpp"
#include "hsym/closure.hpp"
#include "hsym/enumeration.hpp"
#include "hsym/errors.hpp"
#include "hsym/extension.hpp"
#include "hsym/generators.hpp"
#include "hsym/heisenberg.hpp"
#include "hsym/normalizer.hpp"
#include "hsym/selement.hpp"
