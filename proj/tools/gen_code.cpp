// Regenerates the girth-conditioned (3,6)-regular stand-in code.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "nsfaid/qc.hpp"

int main(int argc, char** argv) {
    CLI::App app{"(3,6)-regular QC stand-in generator"};
    int z = 54;
    std::uint64_t seed = 2024;
    int min_girth = 6;
    std::string out;
    app.add_option("--z", z, "circulant size")->capture_default_str();
    app.add_option("--seed", seed)->capture_default_str();
    app.add_option("--min-girth", min_girth)->capture_default_str();
    app.add_option("--out", out, "output file (stdout when absent)");
    CLI11_PARSE(app, argc, argv);

    try {
        nsfaid::QcCode code = nsfaid::generate_regular_code(z, seed, min_girth);
        if (out.empty()) {
            nsfaid::write_base_matrix(std::cout, code);
        } else {
            std::ofstream os(out);
            if (!os) throw std::runtime_error("cannot write " + out);
            nsfaid::write_base_matrix(os, code);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
