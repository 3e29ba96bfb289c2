#pragma once
// Convenience include for the whole library.

#include "mps/dp.hpp"
#include "mps/intlog.hpp"
#include "mps/io.hpp"
#include "mps/operators.hpp"
#include "mps/oracle.hpp"
#include "mps/structure.hpp"
#include "mps/synthesis.hpp"
#include "mps/transforms.hpp"
#include "mps/ttree.hpp"
