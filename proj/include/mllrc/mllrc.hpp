#pragma once

#include "mllrc/error.hpp"
#include "mllrc/galois.hpp"
#include "mllrc/linear_code.hpp"
#include "mllrc/bounds.hpp"
#include "mllrc/constructions.hpp"
#include "mllrc/certify.hpp"
#include "mllrc/io.hpp"
