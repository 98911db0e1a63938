#ifndef PLUMBO_PLUMBO_HPP
#define PLUMBO_PLUMBO_HPP

#include "plumbo/errors.hpp"
#include "plumbo/rational.hpp"
#include "plumbo/linalg.hpp"
#include "plumbo/graph.hpp"
#include "plumbo/rationality.hpp"
#include "plumbo/spinc.hpp"
#include "plumbo/upoly.hpp"
#include "plumbo/complex.hpp"
#include "plumbo/bifiltered.hpp"
#include "plumbo/lattice.hpp"
#include "plumbo/knot.hpp"
#include "plumbo/cone.hpp"
#include "plumbo/model.hpp"
#include "plumbo/fixtures.hpp"
#include "plumbo/report.hpp"

#endif  // PLUMBO_PLUMBO_HPP
