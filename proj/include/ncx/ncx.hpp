#pragma once

#include "field.hpp"
#include "matrix.hpp"
#include "ring.hpp"
#include "linalg.hpp"
#include "support.hpp"
#include "ncomplex.hpp"
#include "homotopy.hpp"
#include "quiver_rep.hpp"
#include "functor_f.hpp"
#include "random.hpp"
#include "acyclicity.hpp"
#include "io.hpp"
#include "properties.hpp"
