#include "wps/jobs.hpp"

#include <sstream>
#include <iomanip>
#include <set>
#include "wps/beilinson.hpp"
#include "wps/convolution.hpp"
#include "wps/resolution.hpp"

namespace wps {

using nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const std::set<std::string> kCommands = {
    "hilbert",       "cohomology",       "bott",     "beilinson",
    "resolve-left",  "resolve-right",    "koszul-check", "diagonal-check",
    "equivariant-check", "convolve",     "hom",      "stabilizer-cover"};

// keys accepted per command (beyond the global ones)
std::set<std::string> allowed_keys(const std::string& cmd) {
    std::set<std::string> keys = {"command", "weights", "format", "character-convention", "n0"};
    auto add = [&](std::initializer_list<const char*> more) {
        for (auto k : more) keys.insert(k);
    };
    if (cmd == "hilbert") add({"range", "relations", "veronese", "module"});
    else if (cmd == "cohomology") add({"k", "module"});
    else if (cmd == "bott") add({"p", "t"});
    else if (cmd == "beilinson") add({"module"});
    else if (cmd == "resolve-left" || cmd == "resolve-right") add({"module", "window"});
    else if (cmd == "koszul-check") add({"relations", "veronese", "max-m", "max-degree"});
    else if (cmd == "diagonal-check") add({"relations", "veronese", "k", "l"});
    else if (cmd == "equivariant-check") add({"k", "l"});
    else if (cmd == "convolve") add({"complexes", "maps", "direction", "window", "max-m"});
    else if (cmd == "hom") add({"complexes", "r", "window"});
    return keys;
}

std::vector<int> int_list(const json& v, const std::string& name) {
    if (!v.is_array()) bad(name + " must be an array of integers");
    std::vector<int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) bad(name + " must be an array of integers");
        out.push_back(x.get<int>());
    }
    return out;
}

JobSpec::ComplexData parse_complex(const json& v, const std::string& name) {
    JobSpec::ComplexData out;
    if (!v.is_object()) bad(name + " must be an object with terms/diffs");
    for (const auto& [key, val] : v.items())
        if (key != "terms" && key != "diffs") bad(name + ": unknown key '" + key + "'");
    if (!v.contains("terms")) bad(name + ".terms required");
    for (const auto& [idx, twists] : v.at("terms").items())
        out.terms[std::stoi(idx)] = int_list(twists, name + ".terms");
    if (v.contains("diffs"))
        for (const auto& [idx, mat] : v.at("diffs").items()) {
            std::vector<std::vector<std::string>> rows;
            if (!mat.is_array()) bad(name + ".diffs must hold matrices");
            for (const auto& row : mat) {
                std::vector<std::string> r;
                for (const auto& e : row) r.push_back(e.get<std::string>());
                rows.push_back(std::move(r));
            }
            out.diffs[std::stoi(idx)] = std::move(rows);
        }
    return out;
}

void parse_window(const json& v, JobSpec& j) {
    auto w = int_list(v, "window");
    if (w.size() != 2 || w[0] > w[1]) bad("window must be [lo, hi] with lo <= hi");
    j.window_lo = w[0];
    j.window_hi = w[1];
}

} // namespace

JobSpec parse_job(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("parse error: ") + e.what());
    }
    if (!doc.is_object()) bad("job document must be an object");
    JobSpec j;
    if (!doc.contains("command") || !doc.at("command").is_string())
        bad("command required");
    j.command = doc.at("command").get<std::string>();
    if (!kCommands.count(j.command)) bad("unknown command '" + j.command + "'");
    auto keys = allowed_keys(j.command);
    for (const auto& [key, val] : doc.items())
        if (!keys.count(key)) bad("unknown key '" + key + "' for command " + j.command);

    if (!doc.contains("weights")) bad("weights required");
    j.weights = int_list(doc.at("weights"), "weights");
    if (j.weights.size() < 2) bad("weights require at least two entries");
    for (int a : j.weights)
        if (a < 1) bad("weights must be positive");

    if (doc.contains("relations"))
        for (const auto& r : doc.at("relations")) j.relations.push_back(r.get<std::string>());
    if (doc.contains("veronese")) {
        if (!doc.at("veronese").is_number_integer() || doc.at("veronese").get<int>() < 1)
            bad("veronese must be a positive integer");
        j.veronese = doc.at("veronese").get<int>();
    }
    if (doc.contains("module")) {
        const auto& m = doc.at("module");
        if (!m.is_object()) bad("module must be an object");
        for (const auto& [key, val] : m.items())
            if (key != "gens" && key != "relations" && key != "coldegs")
                bad("module: unknown key '" + key + "'");
        JobSpec::ModuleData md;
        if (!m.contains("gens")) bad("module.gens required");
        md.gens = int_list(m.at("gens"), "module.gens");
        if (m.contains("relations")) {
            for (const auto& row : m.at("relations")) {
                std::vector<std::string> r;
                for (const auto& e : row) r.push_back(e.get<std::string>());
                md.relations.push_back(std::move(r));
            }
        }
        if (m.contains("coldegs")) md.coldegs = int_list(m.at("coldegs"), "module.coldegs");
        if (!md.relations.empty() && md.relations.size() != md.gens.size())
            bad("module.relations must have one row per generator");
        if (!md.relations.empty() && md.relations[0].size() != md.coldegs.size())
            bad("module.coldegs must match the relation columns");
        j.module_data = std::move(md);
    }
    if (doc.contains("complexes"))
        for (std::size_t i = 0; i < doc.at("complexes").size(); ++i)
            j.complexes.push_back(
                parse_complex(doc.at("complexes")[i], "complexes[" + std::to_string(i) + "]"));
    if (doc.contains("maps")) {
        for (const auto& mp : doc.at("maps")) {
            std::map<int, std::vector<std::vector<std::string>>> parts;
            if (!mp.is_object()) bad("maps entries must be objects index -> matrix");
            for (const auto& [idx, mat] : mp.items()) {
                std::vector<std::vector<std::string>> rows;
                for (const auto& row : mat) {
                    std::vector<std::string> r;
                    for (const auto& e : row) r.push_back(e.get<std::string>());
                    rows.push_back(std::move(r));
                }
                parts[std::stoi(idx)] = std::move(rows);
            }
            j.chain_maps.push_back(std::move(parts));
        }
    }
    auto get_int = [&](const char* key, std::optional<int>& slot) {
        if (doc.contains(key)) {
            if (!doc.at(key).is_number_integer()) bad(std::string(key) + " must be an integer");
            slot = doc.at(key).get<int>();
        }
    };
    get_int("k", j.command == "diagonal-check" || j.command == "equivariant-check" ? j.bik
                                                                                   : j.twist);
    get_int("l", j.bil);
    get_int("p", j.p);
    get_int("t", j.t);
    get_int("r", j.r);
    if (doc.contains("range")) {
        j.range = int_list(doc.at("range"), "range");
        if (j.range.size() != 2 || j.range[0] > j.range[1]) bad("range must be [lo, hi]");
    }
    if (doc.contains("window")) parse_window(doc.at("window"), j);
    if (doc.contains("max-m")) j.max_m = doc.at("max-m").get<int>();
    if (doc.contains("max-degree")) j.max_degree = doc.at("max-degree").get<int>();
    if (doc.contains("n0")) j.n0 = doc.at("n0").get<int>();
    if (doc.contains("direction")) {
        j.direction = doc.at("direction").get<std::string>();
        if (j.direction != "right" && j.direction != "left")
            bad("direction must be right or left");
    }
    if (doc.contains("format")) {
        j.format = doc.at("format").get<std::string>();
        if (j.format != "human" && j.format != "machine") bad("format must be human or machine");
    }
    if (doc.contains("character-convention")) {
        j.character_convention = doc.at("character-convention").get<std::string>();
        if (j.character_convention != "chi" && j.character_convention != "minus-chi")
            bad("character-convention must be chi or minus-chi");
    }
    // command-specific required fields
    if (j.command == "hilbert" && j.range.empty()) bad("range required for hilbert");
    if (j.command == "cohomology" && !j.twist) bad("k required for cohomology");
    if (j.command == "bott" && (!j.p || !j.t)) bad("p and t required for bott");
    if ((j.command == "resolve-left" || j.command == "resolve-right" ||
         j.command == "beilinson") &&
        !j.module_data)
        bad("module required for " + j.command);
    if ((j.command == "diagonal-check" || j.command == "equivariant-check") &&
        (!j.bik || !j.bil))
        bad("k and l required for " + j.command);
    if (j.command == "convolve" && j.complexes.empty()) bad("complexes required for convolve");
    if (j.command == "convolve" && j.chain_maps.size() + 1 != j.complexes.size())
        bad("convolve needs one map per adjacent pair");
    if (j.command == "hom" && j.complexes.size() != 2) bad("hom needs exactly two complexes");
    if (j.command == "hom" && !j.r) bad("r required for hom");
    if (j.max_m < 0 || j.max_degree < 0) bad("bounds must be nonnegative");
    return j;
}

std::string render_job(const JobSpec& j) {
    ordered_json doc;
    doc["command"] = j.command;
    doc["weights"] = j.weights;
    if (!j.relations.empty()) doc["relations"] = j.relations;
    if (j.veronese != 1) doc["veronese"] = j.veronese;
    if (j.module_data) {
        ordered_json m;
        m["gens"] = j.module_data->gens;
        if (!j.module_data->relations.empty()) {
            m["relations"] = j.module_data->relations;
            m["coldegs"] = j.module_data->coldegs;
        }
        doc["module"] = m;
    }
    if (!j.complexes.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto& c : j.complexes) {
            ordered_json cx;
            ordered_json terms;
            for (const auto& [i, t] : c.terms) terms[std::to_string(i)] = t;
            cx["terms"] = terms;
            if (!c.diffs.empty()) {
                ordered_json diffs;
                for (const auto& [i, m] : c.diffs) diffs[std::to_string(i)] = m;
                cx["diffs"] = diffs;
            }
            arr.push_back(cx);
        }
        doc["complexes"] = arr;
    }
    if (!j.chain_maps.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto& mp : j.chain_maps) {
            ordered_json obj;
            for (const auto& [i, m] : mp) obj[std::to_string(i)] = m;
            arr.push_back(obj);
        }
        doc["maps"] = arr;
    }
    if (j.command == "diagonal-check" || j.command == "equivariant-check") {
        if (j.bik) doc["k"] = *j.bik;
        if (j.bil) doc["l"] = *j.bil;
    } else if (j.twist) {
        doc["k"] = *j.twist;
    }
    if (j.p) doc["p"] = *j.p;
    if (j.t) doc["t"] = *j.t;
    if (j.r) doc["r"] = *j.r;
    if (!j.range.empty()) doc["range"] = j.range;
    auto keys = allowed_keys(j.command);
    if (keys.count("window")) doc["window"] = {j.window_lo, j.window_hi};
    if (keys.count("max-m")) doc["max-m"] = j.max_m;
    if (keys.count("max-degree")) doc["max-degree"] = j.max_degree;
    if (j.n0 != 0) doc["n0"] = j.n0;
    if (j.command == "convolve") doc["direction"] = j.direction;
    doc["format"] = j.format;
    doc["character-convention"] = j.character_convention;
    return doc.dump(2);
}

namespace {

// ---------- helpers shared by the runners ----------

GradedModule build_module(const Grading& ring, const JobSpec::ModuleData& md) {
    FreeModule gens;
    gens.twists = md.gens;
    PolyMatrix rel(gens.size());
    for (std::size_t i = 0; i < md.relations.size(); ++i)
        for (const auto& e : md.relations[i]) rel[i].push_back(poly_parse(e, ring.vars()));
    return GradedModule(ring, std::move(gens), std::move(rel), md.coldegs);
}

std::shared_ptr<const PieceAlgebra> build_algebra(const JobSpec& j) {
    Grading g = Grading::weighted(WeightVector(j.weights));
    std::vector<Polynomial> rels;
    for (const auto& r : j.relations) rels.push_back(poly_parse(r, g.vars()));
    std::shared_ptr<const PieceAlgebra> A = std::make_shared<GradedAlgebra>(g, std::move(rels));
    if (j.veronese > 1) A = std::make_shared<VeroneseAlgebra>(A, j.veronese);
    return A;
}

FreeComplex build_complex(const Grading& ring, const JobSpec::ComplexData& cd,
                          const std::string& name) {
    FreeComplex f;
    f.ring = ring;
    for (const auto& [i, t] : cd.terms)
        if (!t.empty()) f.terms[i] = FreeModule{t, {}};
    for (const auto& [i, rows] : cd.diffs) {
        PolyMatrix m;
        for (const auto& row : rows) {
            std::vector<Polynomial> r;
            for (const auto& e : row) r.push_back(poly_parse(e, ring.vars()));
            m.push_back(std::move(r));
        }
        f.diffs[i] = std::move(m);
    }
    auto v = check_complex(f);
    if (!v.ok) throw std::invalid_argument(name + ": " + v.message);
    return f;
}

Character convention(const Character& chi, const WeightVector& w, const JobSpec& j) {
    return j.character_convention == "minus-chi" ? char_neg(chi, w) : chi;
}

ordered_json strand_report_json(const StrandReport& rep) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : rep.rows) {
        ordered_json o;
        o["position"] = r.position;
        o["degree"] = r.degree;
        if (!r.character.residues.empty()) o["character"] = r.character.residues;
        o["dim"] = r.dim_term;
        if (r.bookkeeping) {
            o["kind"] = "block";
        } else {
            o["kernel"] = r.dim_kernel;
            o["image_in"] = r.dim_image_in;
            o["exact"] = r.exact;
        }
        rows.push_back(o);
    }
    ordered_json out;
    out["pass"] = rep.pass;
    if (rep.first_failure) out["first_failure"] = {rep.first_failure->first,
                                                   rep.first_failure->second};
    out["rows"] = rows;
    return out;
}

std::string strand_report_human(const StrandReport& rep, const std::string& title) {
    std::ostringstream os;
    os << title << "\n";
    os << "  verdict: " << (rep.pass ? "PASS" : "FAIL");
    if (rep.first_failure)
        os << " at (position,degree)=(" << rep.first_failure->first << ","
           << rep.first_failure->second << ")";
    os << "\n";
    os << "  " << std::setw(9) << "position" << std::setw(8) << "degree" << std::setw(10)
       << "character" << std::setw(6) << "dim" << std::setw(8) << "kernel" << std::setw(8)
       << "image" << std::setw(8) << "exact" << "\n";
    for (const auto& r : rep.rows) {
        os << "  " << std::setw(9) << r.position << std::setw(8) << r.degree << std::setw(10)
           << (r.character.residues.empty() ? std::string("-") : r.character.str())
           << std::setw(6) << r.dim_term;
        if (r.bookkeeping)
            os << std::setw(8) << "-" << std::setw(8) << "-" << std::setw(8) << "block";
        else
            os << std::setw(8) << r.dim_kernel << std::setw(8) << r.dim_image_in << std::setw(8)
               << (r.exact ? "yes" : "NO");
        os << "\n";
    }
    return os.str();
}

Report ok_report(const JobSpec& j, const std::string& human, ordered_json result) {
    Report rep;
    rep.exit_code = 0;
    rep.human = human;
    rep.machine["command"] = j.command;
    rep.machine["weights"] = j.weights;
    rep.machine["result"] = std::move(result);
    rep.machine["exit"] = 0;
    return rep;
}

// ---------- runners ----------

Report run_hilbert(const JobSpec& j) {
    std::ostringstream os;
    ordered_json vals = ordered_json::array();
    if (j.module_data) {
        GradedModule M = build_module(Grading::weighted(WeightVector(j.weights)), *j.module_data);
        os << "module piece dimensions, weights " << WeightVector(j.weights).str() << "\n";
        for (int d = j.range[0]; d <= j.range[1]; ++d) {
            int v = M.piece_dim(d);
            os << "  d=" << std::setw(3) << d << "  dim=" << v << "\n";
            vals.push_back({{"d", d}, {"dim", v}});
        }
    } else {
        auto A = build_algebra(j);
        os << "algebra piece dimensions, " << A->describe() << "\n";
        for (int d = j.range[0]; d <= j.range[1]; ++d) {
            int v = A->dim(d);
            os << "  d=" << std::setw(3) << d << "  dim=" << v << "\n";
            vals.push_back({{"d", d}, {"dim", v}});
        }
    }
    return ok_report(j, os.str(), std::move(vals));
}

Report run_cohomology(const JobSpec& j) {
    StackDescriptor S = validate_weights(WeightVector(j.weights));
    std::vector<int> h;
    if (j.module_data) {
        GradedModule M = build_module(S.sring(), *j.module_data);
        h = module_cohomology(S, M, *j.twist, j.max_degree + std::abs(*j.twist) + S.sigma() + 4);
    } else {
        h = line_cohomology(S, *j.twist);
    }
    std::ostringstream os;
    os << "cohomology of " << (j.module_data ? "module sheaf" : "O") << "(" << *j.twist
       << ") on P" << S.weights.str() << ":";
    for (std::size_t q = 0; q < h.size(); ++q) os << " h^" << q << "=" << h[q];
    os << "\n";
    ordered_json res;
    res["k"] = *j.twist;
    res["h"] = h;
    return ok_report(j, os.str(), std::move(res));
}

Report run_bott(const JobSpec& j) {
    StackDescriptor S = validate_weights(WeightVector(j.weights));
    auto table = bott_eigen(S, *j.p, *j.t);
    std::ostringstream os;
    os << "H^q(P^n-cover, Omega^" << *j.p << "(" << *j.t << ")) by character:\n";
    ordered_json rows = ordered_json::array();
    for (const auto& [chi, hv] : table) {
        Character rep = convention(chi, S.weights, j);
        os << "  chi=" << rep.str() << " :";
        for (std::size_t q = 0; q < hv.size(); ++q) os << " h^" << q << "=" << hv[q];
        os << "\n";
        rows.push_back({{"character", rep.residues}, {"h", hv}});
    }
    if (table.empty()) os << "  (all groups vanish)\n";
    return ok_report(j, os.str(), std::move(rows));
}

Report run_beilinson(const JobSpec& j) {
    StackDescriptor S = validate_weights(WeightVector(j.weights));
    GradedModule a = build_module(S.sring(), *j.module_data);
    auto table = beilinson_E1(S, a);
    int n = S.n();
    std::ostringstream os;
    os << "Beilinson E_1 table, weights " << S.weights.str()
       << " (one grid per character; rows p, columns q)\n";
    ordered_json rows = ordered_json::array();
    // group by character, render each block as a p x q grid
    std::map<Character, std::map<std::pair<int, int>, int>> blocks;
    for (const auto& [key, v] : table.entries) {
        blocks[convention(key.chi, S.weights, j)][{key.p, key.q}] = v;
        Character rep = convention(key.chi, S.weights, j);
        rows.push_back({{"p", key.p}, {"q", key.q}, {"character", rep.residues}, {"dim", v}});
    }
    for (const auto& [chi, entries] : blocks) {
        os << "  chi = " << chi.str() << "\n";
        os << "    p\\q ";
        for (int q = 0; q <= n; ++q) os << std::setw(5) << q;
        os << "\n";
        for (int p = -n; p <= 0; ++p) {
            os << "    " << std::setw(3) << p << " ";
            for (int q = 0; q <= n; ++q) {
                auto it = entries.find({p, q});
                os << std::setw(5) << (it == entries.end() ? 0 : it->second);
            }
            os << "\n";
        }
    }
    if (table.entries.empty()) os << "  (empty table)\n";
    return ok_report(j, os.str(), std::move(rows));
}

ordered_json complex_json(const FreeComplex& f) {
    ordered_json terms;
    for (const auto& [i, t] : f.terms)
        if (!t.twists.empty()) terms[std::to_string(i)] = t.twists;
    ordered_json diffs;
    for (const auto& [i, m] : f.diffs) {
        ordered_json rows = ordered_json::array();
        for (const auto& row : m) {
            ordered_json r = ordered_json::array();
            for (const auto& e : row) r.push_back(e.str());
            rows.push_back(r);
        }
        diffs[std::to_string(i)] = rows;
    }
    ordered_json out;
    out["terms"] = terms;
    out["diffs"] = diffs;
    return out;
}

Report run_resolve(const JobSpec& j, bool left) {
    StackDescriptor S = validate_weights(WeightVector(j.weights));
    GradedModule a = build_module(S.sring(), *j.module_data);
    int lo = std::max(j.window_lo, j.n0);
    ResolutionCertificate cert = left ? left_resolution(S, a, lo, j.window_hi)
                                      : right_resolution(S, a, lo, j.window_hi);
    std::ostringstream os;
    os << (left ? "left" : "right") << " resolution on P" << S.weights.str() << ", window ["
       << lo << ".." << j.window_hi << "]\n";
    os << "  terms:";
    for (int p = 0; p <= S.n(); ++p) {
        os << " F_" << p << "=(";
        const auto& tw = cert.complex.term(p).twists;
        for (std::size_t i = 0; i < tw.size(); ++i) os << (i ? "," : "") << -tw[i];
        os << ")";
    }
    os << "\n";
    os << "  augmentation entries (" << (left ? "onto the target" : "from the target")
       << "): ";
    {
        bool first = true;
        for (const auto& row : cert.augmentation)
            for (const auto& e : row) {
                if (!e.is_zero()) {
                    os << (first ? "" : ", ") << e.str();
                    first = false;
                }
            }
        if (first) os << "(none)";
        os << "\n";
    }
    os << strand_report_human(cert.strand_report, "  strand certification:");
    ordered_json res;
    res["complex"] = complex_json(cert.complex);
    ordered_json aug = ordered_json::array();
    for (const auto& row : cert.augmentation) {
        ordered_json r = ordered_json::array();
        for (const auto& e : row) r.push_back(e.str());
        aug.push_back(r);
    }
    res["augmentation"] = aug;
    ordered_json vanish = ordered_json::array();
    for (const auto& [key, v] : cert.vanishing_table.entries)
        vanish.push_back({{"p", key.p},
                          {"q", key.q},
                          {"character", convention(key.chi, S.weights, j).residues},
                          {"dim", v}});
    res["vanishing_table"] = vanish;
    res["window"] = {lo, j.window_hi};
    res["report"] = strand_report_json(cert.strand_report);
    return ok_report(j, os.str(), std::move(res));
}

Report run_koszul_check(const JobSpec& j) {
    auto A = build_algebra(j);
    KoszulData K(A);
    auto rep = koszul_check(K, j.max_m, j.max_degree);
    std::ostringstream os;
    os << "koszul check for " << A->describe() << ", m_max=" << j.max_m
       << ", k_max=" << j.max_degree << "\n";
    if (rep.pass) {
        os << "  PASS (all strands exact)\n";
    } else {
        os << "  FAIL at (m,k)=(" << rep.first_failure->first << ","
           << rep.first_failure->second << ")\n";
    }
    ordered_json res;
    res["b_dims"] = ordered_json::array();
    for (int m = 0; m <= j.max_m; ++m) res["b_dims"].push_back(K.dim_b(m));
    res["report"] = strand_report_json(rep);
    return ok_report(j, os.str(), std::move(res));
}

Report run_diagonal_check(const JobSpec& j) {
    auto A = build_algebra(j);
    KoszulData K(A);
    auto rep = diagonal_strand_check(K, *j.bik, *j.bil);
    std::ostringstream os;
    os << "diagonal strand (" << *j.bik << "," << *j.bil << ") for " << A->describe() << "\n";
    os << strand_report_human(rep, "  strand:");
    ordered_json res;
    res["k"] = *j.bik;
    res["l"] = *j.bil;
    res["report"] = strand_report_json(rep);
    return ok_report(j, os.str(), std::move(res));
}

Report run_equivariant_check(const JobSpec& j) {
    WeightVector w(j.weights);
    auto rep = equivariant_strand_check(w, *j.bik, *j.bil);
    std::ostringstream os;
    os << "equivariant diagonal strand (" << *j.bik << "," << *j.bil << ") on P" << w.str()
       << "\n";
    os << strand_report_human(rep, "  invariant strand:");
    ordered_json res;
    res["k"] = *j.bik;
    res["l"] = *j.bil;
    res["report"] = strand_report_json(rep);
    return ok_report(j, os.str(), std::move(res));
}

Report run_convolve(const JobSpec& j) {
    Grading ring = Grading::weighted(WeightVector(j.weights));
    std::vector<FreeComplex> seq;
    for (std::size_t i = 0; i < j.complexes.size(); ++i)
        seq.push_back(build_complex(ring, j.complexes[i], "complexes[" + std::to_string(i) + "]"));
    std::vector<ChainMap> maps;
    for (std::size_t p = 0; p + 1 < seq.size(); ++p) {
        ChainMap m{&seq[p + 1], &seq[p], {}, 0};
        for (const auto& [idx, rows] : j.chain_maps[p]) {
            PolyMatrix pm;
            for (const auto& row : rows) {
                std::vector<Polynomial> r;
                for (const auto& e : row) r.push_back(poly_parse(e, ring.vars()));
                pm.push_back(std::move(r));
            }
            m.parts[idx] = std::move(pm);
        }
        maps.push_back(std::move(m));
    }
    DegreeWindow win{j.window_lo, j.window_hi};
    ConvolutionTrace trace = j.direction == "right"
                                 ? right_convolution(seq, maps, win, j.max_m)
                                 : left_convolution(seq, maps, win, j.max_m);
    std::ostringstream os;
    os << j.direction << " convolution of " << seq.size() << " objects, window ["
       << j.window_lo << ".." << j.window_hi << "]\n";
    os << "  vanishing hypothesis Hom(a_p[r], a_q) = 0: "
       << (trace.hypothesis_ok ? "satisfied" : "VIOLATED") << "\n";
    for (const auto& row : trace.hypothesis_report)
        if (row.dim != 0)
            os << "    Hom(a_" << row.p << "[" << row.r << "], a_" << row.q
               << ") has dim " << row.dim << "\n";
    os << "  result homology strands (index, degree) -> dim:\n";
    ordered_json strands = ordered_json::array();
    int lo = trace.result.lo() - 1, hi = trace.result.hi() + 1;
    for (int i = lo; i <= hi; ++i)
        for (int d = j.window_lo; d <= j.window_hi; ++d) {
            int h = homology_strand(trace.result, i, d);
            if (h != 0) {
                os << "    H_" << i << " deg " << d << " dim " << h << "\n";
                strands.push_back({{"i", i}, {"degree", d}, {"dim", h}});
            }
        }
    ordered_json res;
    res["hypothesis_ok"] = trace.hypothesis_ok;
    ordered_json hyp = ordered_json::array();
    for (const auto& row : trace.hypothesis_report)
        if (row.dim != 0)
            hyp.push_back({{"p", row.p}, {"q", row.q}, {"r", row.r}, {"dim", row.dim}});
    res["hypothesis_violations"] = hyp;
    res["result"] = complex_json(trace.result);
    res["homology"] = strands;
    res["intermediates"] = static_cast<int>(trace.intermediates.size());
    return ok_report(j, os.str(), std::move(res));
}

Report run_hom(const JobSpec& j) {
    Grading ring = Grading::weighted(WeightVector(j.weights));
    FreeComplex F = build_complex(ring, j.complexes[0], "complexes[0]");
    FreeComplex G = build_complex(ring, j.complexes[1], "complexes[1]");
    DegreeWindow win{j.window_lo, j.window_hi};
    int dim = hom_derived(F, G, *j.r, win);
    std::ostringstream os;
    os << "dim Hom_D(F, G[" << *j.r << "]) over degrees [" << j.window_lo << ".."
       << j.window_hi << "] = " << dim << "\n";
    ordered_json res;
    res["r"] = *j.r;
    res["dim"] = dim;
    return ok_report(j, os.str(), std::move(res));
}

Report run_stabilizer_cover(const JobSpec& j) {
    StackDescriptor S = validate_weights(WeightVector(j.weights));
    auto cov = stabilizer_cover(S);
    std::ostringstream os;
    os << "stabilizer cover bounds for P" << S.weights.str() << ":\n";
    ordered_json rows = ordered_json::array();
    for (auto& [i, j0] : cov) {
        os << "  fixed point " << i << ": stabilizer mu_" << S.weights.weights[static_cast<std::size_t>(i)]
           << ", j0 = " << j0 << "\n";
        rows.push_back({{"i", i}, {"j0", j0}});
    }
    return ok_report(j, os.str(), std::move(rows));
}

} // namespace

Report run_job(const JobSpec& j) {
    try {
        if (j.command == "hilbert") return run_hilbert(j);
        if (j.command == "cohomology") return run_cohomology(j);
        if (j.command == "bott") return run_bott(j);
        if (j.command == "beilinson") return run_beilinson(j);
        if (j.command == "resolve-left") return run_resolve(j, true);
        if (j.command == "resolve-right") return run_resolve(j, false);
        if (j.command == "koszul-check") return run_koszul_check(j);
        if (j.command == "diagonal-check") return run_diagonal_check(j);
        if (j.command == "equivariant-check") return run_equivariant_check(j);
        if (j.command == "convolve") return run_convolve(j);
        if (j.command == "hom") return run_hom(j);
        if (j.command == "stabilizer-cover") return run_stabilizer_cover(j);
        Report r;
        r.exit_code = 1;
        r.human = "usage error: unknown command\n";
        r.machine = {{"error", "unknown command"}, {"exit", 1}};
        return r;
    } catch (const VanishingError& e) {
        Report r;
        r.exit_code = 3;
        r.human = std::string("hypothesis failure: ") + e.what() + "\n";
        r.machine = {{"error", e.what()},
                     {"kind", "hypothesis"},
                     {"p", e.p},
                     {"q", e.q},
                     {"character", e.chi.residues},
                     {"exit", 3}};
        return r;
    } catch (const BoundExhausted& e) {
        Report r;
        r.exit_code = 4;
        r.human = std::string("bound exhausted: ") + e.what() + "\n";
        r.machine = {{"error", e.what()},
                     {"kind", "bound"},
                     {"degree_reached", e.degree_reached},
                     {"exit", 4}};
        return r;
    } catch (const std::invalid_argument& e) {
        Report r;
        r.exit_code = 2;
        r.human = std::string("validation error: ") + e.what() + "\n";
        r.machine = {{"error", e.what()}, {"kind", "validation"}, {"exit", 2}};
        return r;
    }
}

} // namespace wps
