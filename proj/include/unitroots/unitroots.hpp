#pragma once

#include <unitroots/batteries.hpp>
#include <unitroots/common.hpp>
#include <unitroots/counts.hpp>
#include <unitroots/enclosure.hpp>
#include <unitroots/lattice.hpp>
#include <unitroots/order.hpp>
#include <unitroots/poly.hpp>
#include <unitroots/region.hpp>
#include <unitroots/version.hpp>
#include <unitroots/volume.hpp>
#include <unitroots/weil.hpp>
