#pragma once

#include "frellich/errors.hpp"
#include "frellich/rational.hpp"
#include "frellich/polynomial.hpp"
#include "frellich/parser.hpp"
#include "frellich/sphere.hpp"
#include "frellich/quadrature.hpp"
#include "frellich/finsler.hpp"
#include "frellich/constants.hpp"
#include "frellich/geometry.hpp"
#include "frellich/rellich1d.hpp"
#include "frellich/verify.hpp"
#include "frellich/io.hpp"
#include "frellich/svg.hpp"
