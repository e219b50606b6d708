#include "xorsatlab/table1.hpp"

#include <stdexcept>

namespace xorsat {

const std::vector<Table1Row>& table1_rows() {
    using enum Table1Best;
    static const std::vector<Table1Row> rows = {
        {3, 4, 0.875, 0.9366, 0.8730, 0.8930, 0.8898, SimulatedAnnealing},
        {3, 5, 0.8, 0.9005, 0.8176, 0.8379, 0.8532, SimulatedAnnealing},
        {3, 6, 0.75, 0.8712, 0.7776, 0.7857, 0.8231, SimulatedAnnealing},
        {3, 7, 0.71428, 0.8492, 0.7476, 0.7621, 0.8001, SimulatedAnnealing},
        {3, 8, 0.6875, 0.8287, 0.7243, 0.7312, 0.7813, SimulatedAnnealing},
        {4, 5, 0.9, 0.9279, 0.8605, 0.9216, 0.8797, SimulatedAnnealing},
        {4, 6, 0.83333, 0.9024, 0.8214, 0.8616, 0.8498, SimulatedAnnealing},
        {4, 7, 0.78571, 0.8771, 0.7908, 0.8267, 0.8259, SimulatedAnnealing},
        {4, 8, 0.75, 0.8587, 0.7663, 0.7905, 0.8061, SimulatedAnnealing},
        {5, 6, 0.91667, 0.9190, 0.8443, 0.9312, 0.8669, RegevFgum},
        {5, 7, 0.85714, 0.8965, 0.8140, 0.8853, 0.8428, SimulatedAnnealing},
        {5, 8, 0.8125, 0.8740, 0.7893, 0.8441, 0.8226, SimulatedAnnealing},
        {6, 7, 0.92857, 0.9051, 0.8291, 0.9427, 0.8546, RegevFgum},
        {6, 8, 0.875, 0.8875, 0.8045, 0.8962, 0.8344, RegevFgum},
        {7, 8, 0.9375, 0.8155, 0.8155, 0.9481, 0.8432, RegevFgum},
    };
    return rows;
}

const Table1Row& table1_row(int k, int D) {
    for (const Table1Row& row : table1_rows())
        if (row.k == k && row.D == D) return row;
    throw std::invalid_argument("no published row for this (k,D)");
}

}  // namespace xorsat
