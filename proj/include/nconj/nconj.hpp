#pragma once

#include "nconj/errors.hpp"
#include "nconj/arith.hpp"
#include "nconj/quality.hpp"
#include "nconj/polyident.hpp"
#include "nconj/constructions.hpp"
#include "nconj/search.hpp"
#include "nconj/records.hpp"
