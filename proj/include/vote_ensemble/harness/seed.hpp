#pragma once

#include <cstdint>
#include <string_view>

namespace vote_ensemble::harness {

/// Child seed for one (label, n, replication) cell of an experiment.
///
/// The label bytes, n and replication index are packed into 64-bit words
/// (length-prefixed, so distinct label tuples never share an encoding) and
/// folded into the master seed through splitmix64 rounds. Identical inputs
/// always give identical children.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t n,
                          std::uint64_t replication);

}  // namespace vote_ensemble::harness
