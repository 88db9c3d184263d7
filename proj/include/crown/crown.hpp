#pragma once

#include "crown/error.hpp"
#include "crown/intertwining.hpp"
#include "crown/io.hpp"
#include "crown/jet.hpp"
#include "crown/numerics.hpp"
#include "crown/paley_wiener.hpp"
#include "crown/parallel.hpp"
#include "crown/poisson_kernel.hpp"
#include "crown/reduction.hpp"
#include "crown/sphere.hpp"
#include "crown/test_function.hpp"
#include "crown/testbed.hpp"
#include "crown/transform.hpp"
