#pragma once

#include <vector>

namespace xorsat {

// Published benchmark scores for D-regular max-k-XORSAT (satisfied fraction),
// n = 2520, SA best of 4 seeds at 10^6 sweeps, QAOA at depth p = 16. `best`
// names the top-scoring column per row.
enum class Table1Best { SimulatedAnnealing, RegevFgum };

struct Table1Row {
    int k, D;
    double prange;      // (1 + k/D)/2, printed at 4-5 digits
    double sa;          // empirical simulated annealing
    double dqi_bp;      // density-evolution DQI+BP score
    double regev_fgum;  // FGUM theory score (matched by Turbo Prange)
    double qaoa_p16;    // hypertree QAOA at p = 16
    Table1Best best;
};

const std::vector<Table1Row>& table1_rows();

// Row lookup; throws std::invalid_argument for pairs outside the table.
const Table1Row& table1_row(int k, int D);

}  // namespace xorsat
