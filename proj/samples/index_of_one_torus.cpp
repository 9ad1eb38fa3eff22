// Bounds and the Galerkin estimate for a single torus, using the library directly.
//
//   index_of_one_torus 4 3 12.7898 81
#include <cstdlib>
#include <iostream>

#include "wente/wente.hpp"

int main(int argc, char** argv) {
    if (argc != 5) {
        std::cerr << "usage: " << argv[0] << " ell n theta_deg m\n";
        return 2;
    }
    const int ell = std::atoi(argv[1]);
    const int n = std::atoi(argv[2]);
    const double theta = std::atof(argv[3]);
    const int m = std::atoi(argv[4]);

    try {
        const wente::SurfaceParams p = wente::build_surface(ell, n, 0.5, theta);
        const auto ext = wente::potential_extrema(p);
        const auto sandwich = wente::potential_sandwich(p);
        std::cout << "W " << p.label() << ": x = " << p.x_period << ", y = " << p.y_period << ", V_max = " << ext.v_max
                  << '\n';
        std::cout << "Courant lower bound " << wente::courant_bound(ell, n) << ", sandwich " << sandwich.lower << " <= Ind <= "
                  << sandwich.upper << '\n';

        const wente::GalerkinMatrix a = wente::assemble(p, m);
        const wente::SpectrumEstimate est = wente::eigen_symmetric(a.entries);
        std::cout << "A_" << m << " has " << est.negative_count << " negative eigenvalues, so Ind is "
                  << est.negative_count - 1 << " or " << est.negative_count << '\n';
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 0;
}
