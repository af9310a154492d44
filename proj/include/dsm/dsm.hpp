#pragma once

#include "dsm/body.hpp"
#include "dsm/error.hpp"
#include "dsm/explorer.hpp"
#include "dsm/families.hpp"
#include "dsm/frame.hpp"
#include "dsm/io.hpp"
#include "dsm/measures.hpp"
#include "dsm/possibility.hpp"
#include "dsm/product.hpp"
#include "dsm/random.hpp"
