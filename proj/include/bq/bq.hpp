#pragma once

#include "bq/field.hpp"
#include "bq/linalg.hpp"
#include "bq/quiver.hpp"
#include "bq/path.hpp"
#include "bq/algebra.hpp"
#include "bq/relations.hpp"
#include "bq/symmetric.hpp"
#include "bq/module.hpp"
#include "bq/sequence.hpp"
#include "bq/screening.hpp"
#include "bq/document.hpp"
