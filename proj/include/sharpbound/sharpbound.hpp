// Umbrella header.
#pragma once

#include "sharpbound/bounds.hpp"
#include "sharpbound/errors.hpp"
#include "sharpbound/hermitian.hpp"
#include "sharpbound/instance.hpp"
#include "sharpbound/matrix.hpp"
#include "sharpbound/means.hpp"
#include "sharpbound/positive_map.hpp"
#include "sharpbound/rng.hpp"
#include "sharpbound/search.hpp"
#include "sharpbound/serialize.hpp"
#include "sharpbound/verify.hpp"
