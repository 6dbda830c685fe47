#pragma once

// Eight-user SINR sets (dB) reproducing the three pairing patterns of the
// A-UP walkthrough. MSD outcomes for every (G1, G2) combination were
// enumerated offline and are re-asserted in test_pairing.

#include <string>
#include <vector>

#include "noma_pairlab/core_rates.hpp"

namespace oracle {

// Every aligned pair passes MSD.
inline const std::vector<double> kCase1Db{0, 2, 4, 6, 9, 11, 13, 15};
// (U4, U5) fails, (U4, U6) passes; everything else passes.
inline const std::vector<double> kCase2Db{0, 1, 3, 6, 6.5, 9.5, 12, 15};
// U4 fails with every G2 user; U3 could pair with U5 but must not.
inline const std::vector<double> kCase3Db{2, 5, 7, 10, 10.5, 11, 11.3, 11.6};
// U4 fails with every G2 user; U3 fails with U5 and passes with U6.
inline const std::vector<double> kCase3bDb{2, 5, 9, 10, 10.5, 11.5, 11.6, 11.7};

/// Users "U1".."Un" in the given order.
inline std::vector<noma::UserChannel> users_from_db(const std::vector<double>& db) {
    std::vector<noma::UserChannel> users;
    for (std::size_t i = 0; i < db.size(); ++i) {
        users.emplace_back("U" + std::to_string(i + 1), noma::db_to_linear(db[i]));
    }
    return users;
}

}  // namespace oracle
