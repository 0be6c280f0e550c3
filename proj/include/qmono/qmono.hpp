// Convenience umbrella: the full library surface.
#pragma once

#include "bounds.hpp"
#include "catalog.hpp"
#include "concurrence.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "monogamy.hpp"
#include "rng.hpp"
#include "scan.hpp"
#include "state.hpp"
