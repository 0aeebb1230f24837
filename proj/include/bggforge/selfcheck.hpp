#pragma once

#include "bggforge/isotypic.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bggforge {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Row orthogonality, sum of squared dimensions, relations and traces of every model.
std::vector<CheckResult> fixture_checks(const Fixture& fx);
/// Equivariance and invertibility of the decomposition matrices, plus a
/// serialize / parse / serialize round trip that must be byte-identical.
std::vector<CheckResult> tensor_checks(const Fixture& fx, const TensorStructure& ts);

struct OracleSummary {
    int trials = 0;
    int failures = 0;
    std::string first_failure;
};

/// Random isotypic morphisms (dense dimension <= max_dense): kernel, cokernel
/// and composition against dense elimination on the expanded matrices.
OracleSummary dense_oracle_suite(int trials, std::uint64_t seed, std::size_t max_dense = 40);

std::vector<CheckResult> selfcheck(const Fixture& fx, const TensorStructure& ts, int oracle_trials = 50);

}  // namespace bggforge
