#include <cstring>
#include <iostream>

#include "zp2/acceptance.hpp"

using namespace zp2;

int main(int argc, char** argv) {
    acceptance::Config cfg;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--p") == 0 && i + 1 < argc) cfg.p = std::atoi(argv[++i]);
    int failed = 0;
    for (int id : acceptance::criteria_for(cfg.p)) {
        auto r = acceptance::run_criterion(id, cfg);
        std::cout << acceptance::format_line(r) << std::endl;
        if (!r.pass) ++failed;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
    return failed == 0 ? 0 : 1;
}
