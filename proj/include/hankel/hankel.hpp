#pragma once

#include "hankel/errors.hpp"
#include "hankel/specfun.hpp"
#include "hankel/quad.hpp"
#include "hankel/trieig.hpp"
#include "hankel/cpswf.hpp"
#include "hankel/oracle.hpp"
#include "hankel/bounds.hpp"
#include "hankel/approx.hpp"
#include "hankel/io.hpp"
