#pragma once

#include "seatplan/model.hpp"

namespace seatplan {

// Greedy constructor for exchange-stable arrangements under B-utility with
// symmetric preferences. Ties everywhere broken by smallest index.
Arrangement algorithm1(const Instance& inst);

// Consecutive left-to-right placement for 1-dimensional preferences on path
// or cycle seat graphs. Exchange-stable for S- and W-utility.
Arrangement oned_consecutive(const Instance& inst);

}  // namespace seatplan
