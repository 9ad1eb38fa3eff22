#pragma once

#include "wente/elliptic.hpp"
#include "wente/surface.hpp"
#include "wente/catalog.hpp"
#include "wente/basis.hpp"
#include "wente/matrix.hpp"
#include "wente/spectrum.hpp"
#include "wente/cache.hpp"
#include "wente/assembly.hpp"
#include "wente/bounds.hpp"
#include "wente/report.hpp"
