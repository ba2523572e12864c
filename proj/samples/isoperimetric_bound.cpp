// Lower bound on the edge boundary of a t-vertex set in a torus, compared
// with the exhaustive minimum for a small shape.

#include <iostream>

#include "torusiso/isoperimetry.hpp"
#include "torusiso/oracle.hpp"

int main()
{
    using namespace torusiso;
    const TorusShape shape({4, 4, 2}, PairedLinks::doubled);
    for (Count t = 1; t <= shape.vertex_count() / 2; ++t) {
        const auto bound = bound_general_torus(shape, t);
        const auto exact = brute_force_min_perimeter(shape, t);
        std::cout << "t=" << t << "  bound=" << bound.value << "  min=" << exact.min_perimeter;
        if (bound.attaining_cuboid) std::cout << "  attained by " << bound.attaining_cuboid->str();
        std::cout << '\n';
    }
}
