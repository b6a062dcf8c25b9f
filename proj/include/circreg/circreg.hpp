#pragma once

#include "betti.hpp"
#include "edge_ideals.hpp"
#include "errors.hpp"
#include "expected.hpp"
#include "graph.hpp"
#include "isomorphism.hpp"
#include "monomial.hpp"
#include "monomial_ideal.hpp"
#include "prime_field.hpp"
#include "verify.hpp"
#include "version.hpp"
