#pragma once

#include "graphqec/abelian.hpp"
#include "graphqec/combinatorics.hpp"
#include "graphqec/detector.hpp"
#include "graphqec/graph.hpp"
#include "graphqec/matrix.hpp"
#include "graphqec/oracle.hpp"
#include "graphqec/singleton.hpp"
#include "graphqec/zmod.hpp"
