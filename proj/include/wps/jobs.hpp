#ifndef WPS_JOBS_HPP
#define WPS_JOBS_HPP

#include <string>
#include <optional>
#include "json.hpp"
#include "wps/complex.hpp"

namespace wps {

// Batch job description. One structured document per invocation; strict keys.
struct JobSpec {
    std::string command;
    std::vector<int> weights;
    std::vector<std::string> relations;  // algebra relations (polynomial text)
    int veronese = 1;

    // module presentation: generator degrees + relation matrix + column degrees
    struct ModuleData {
        std::vector<int> gens;
        std::vector<std::vector<std::string>> relations;
        std::vector<int> coldegs;
    };
    std::optional<ModuleData> module_data;

    // serialized complexes for convolve/hom
    struct ComplexData {
        std::map<int, std::vector<int>> terms;
        std::map<int, std::vector<std::vector<std::string>>> diffs;
    };
    std::vector<ComplexData> complexes;
    std::vector<std::map<int, std::vector<std::vector<std::string>>>> chain_maps;

    std::optional<int> twist;       // k of cohomology / m of resolve targets
    std::optional<int> p, t;        // bott
    std::optional<int> bik, bil;    // bidegree (k, l)
    std::optional<int> r;           // hom shift
    std::vector<int> range;         // [lo, hi]
    int window_lo = 0, window_hi = 8;
    int max_m = 4;
    int max_degree = 6;
    int n0 = 0;
    std::string direction = "right";  // convolve
    std::string format = "human";     // human | machine
    std::string character_convention = "chi";  // chi | minus-chi
};

struct Report {
    int exit_code = 0;
    std::string human;
    nlohmann::ordered_json machine;
};

// Strict parse of the job document (JSON text). Throws std::invalid_argument
// with a message naming the offending key/field.
JobSpec parse_job(const std::string& text);

// Canonical serialization; parse_job(render(j)) reproduces j.
std::string render_job(const JobSpec& j);

// Execute. Never throws for the documented failure modes: the exit code and
// diagnostics are encoded in the report (0 ok, 2 validation, 3 hypothesis
// failure, 4 bound exhausted).
Report run_job(const JobSpec& j);

} // namespace wps

#endif
