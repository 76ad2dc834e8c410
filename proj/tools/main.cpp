#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wps/jobs.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact homological calculator for weighted projective stacks"};
    std::string input = "-";
    std::string format, window, charconv;
    int max_m = -1, max_degree = -1;
    long n0 = LONG_MIN;
    app.add_option("input", input, "job document (JSON path, or - for stdin)");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"human", "machine"}));
    app.add_option("--window", window, "strand window a..b");
    app.add_option("--max-m", max_m, "homological bound");
    app.add_option("--max-degree", max_degree, "internal degree bound");
    app.add_option("--n0", n0, "strand window base");
    app.add_option("--character-convention", charconv, "chi or minus-chi")
        ->check(CLI::IsMember({"chi", "minus-chi"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 1;
    }

    std::string text;
    if (input == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(input);
        if (!in) {
            std::cerr << "cannot open " << input << "\n";
            return 1;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    wps::JobSpec job;
    try {
        job = wps::parse_job(text);
    } catch (const std::exception& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    }
    if (!format.empty()) job.format = format;
    if (!charconv.empty()) job.character_convention = charconv;
    if (max_m >= 0) job.max_m = max_m;
    if (max_degree >= 0) job.max_degree = max_degree;
    if (n0 != LONG_MIN) job.n0 = static_cast<int>(n0);
    if (!window.empty()) {
        auto pos = window.find("..");
        if (pos == std::string::npos) {
            std::cerr << "validation error: --window expects a..b\n";
            return 2;
        }
        try {
            job.window_lo = std::stoi(window.substr(0, pos));
            job.window_hi = std::stoi(window.substr(pos + 2));
        } catch (const std::exception&) {
            std::cerr << "validation error: --window expects integers\n";
            return 2;
        }
        if (job.window_lo > job.window_hi) {
            std::cerr << "validation error: --window lo > hi\n";
            return 2;
        }
    }

    wps::Report rep = wps::run_job(job);
    if (job.format == "machine")
        std::cout << rep.machine.dump(2) << "\n";
    else
        std::cout << rep.human;
    return rep.exit_code;
}
