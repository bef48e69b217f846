#pragma once

// Umbrella header: the whole laboratory in one include.

#include "sequence.hpp"
#include "geometry.hpp"
#include "bst_machine.hpp"
#include "bounds.hpp"
#include "algorithms.hpp"
#include "tango.hpp"
#include "oracle.hpp"
#include "registry.hpp"
#include "metalearn.hpp"
#include "harness.hpp"
