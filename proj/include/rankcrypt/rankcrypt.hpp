#pragma once

#include "rankcrypt/artifact.hpp"
#include "rankcrypt/attacks.hpp"
#include "rankcrypt/binary_field.hpp"
#include "rankcrypt/bitmatrix.hpp"
#include "rankcrypt/csv.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/field_matrix.hpp"
#include "rankcrypt/gabidulin.hpp"
#include "rankcrypt/harness.hpp"
#include "rankcrypt/liga.hpp"
#include "rankcrypt/params.hpp"
#include "rankcrypt/qpoly.hpp"
#include "rankcrypt/ramesses.hpp"
#include "rankcrypt/rng.hpp"
#include "rankcrypt/sampling.hpp"
#include "rankcrypt/supercode.hpp"
#include "rankcrypt/tower.hpp"
#include "rankcrypt/vectors.hpp"
