// Walks through the fivefold wheel code: prints the homogeneous systems for
// two representative 2-error configurations, then sweeps single-error
// correction over a few groups and every choice of input vertex.

#include "graphqec/graphqec.hpp"

#include <iostream>

int main() {
    using namespace graphqec;
    const WeightedGraph wheel = wheel_code();

    for (const VertexSet& e : {VertexSet{1, 2}, VertexSet{1, 3}}) {
        std::cout << "E = {" << e[0] << "," << e[1] << "}\n";
        for (const auto& eq : linear_system(wheel, e)) {
            std::cout << "  vertex " << eq.vertex << ":";
            const char* sep = " ";
            for (const auto& [v, w] : eq.terms) {
                std::cout << sep << (w == 1 ? "" : w.str() + "*") << "d" << v;
                sep = " + ";
            }
            std::cout << " = 0\n";
        }
        std::cout << "  strong: " << std::boolalpha << strong_detects(wheel, make_group({2}), e) << "\n";
    }

    for (std::int64_t d : {2, 3, 4, 5, 7}) {
        const auto rep = corrects_errors(wheel, make_group({d}), 1);
        std::cout << "Z_" << d << ": " << rep.total_detected() << "/" << rep.total_checked() << " detected\n";
    }
    for (std::size_t v = 0; v < wheel.size(); ++v) {
        const auto rep = input_exchange_check(wheel, make_group({2}), {v}, 1);
        std::cout << "input " << v << ": corrects one error = " << rep.all_detected() << "\n";
    }
}
