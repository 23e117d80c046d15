// Command-line front end.
#include "wf/classical.hpp"
#include "wf/modules.hpp"
#include "wf/roots.hpp"
#include "wf/suite.hpp"
#include "wf/weight.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wf;

namespace {

// bump when straightening output changes
constexpr int kCacheVersion = 1;

// Straightened words persisted between runs, keyed by canonical word text.
class WordCache {
public:
    WordCache() {
        const char* dir = std::getenv("WF_CACHE_DIR");
        if (!dir || !*dir) return;
        path_ = fs::path(dir) / "straighten.json";
    }
    void load(Straightener& st) {
        if (path_.empty() || !fs::exists(path_)) return;
        try {
            std::ifstream in(path_);
            const json j = json::parse(in);
            if (j.value("version", 0) != kCacheVersion) return;  // stale
            for (const auto& [k, v] : j.at("words").items()) st.preload(parse_word(k), AlgebraElement::from_json(v));
            loaded_ = st.memo().size();
        } catch (const std::exception&) {
            // unreadable cache is just a cold start
        }
    }
    void save(const Straightener& st) const {
        if (path_.empty() || st.memo().size() == loaded_) return;
        json words = json::object();
        for (const auto& [w, x] : st.memo()) words[word_text(w)] = x.to_json();
        const json j = {{"version", kCacheVersion}, {"words", words}};
        std::error_code ec;
        fs::create_directories(path_.parent_path(), ec);
        // write then rename so concurrent runs never see half a file
        const fs::path tmp = path_.string() + ".tmp" + std::to_string(::getpid());
        {
            std::ofstream out(tmp);
            out << j.dump();
        }
        fs::rename(tmp, path_, ec);
        if (ec) fs::remove(tmp, ec);
    }

private:
    fs::path path_;
    size_t loaded_ = 0;
};

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

// "default" or "lo:hi,lo:hi,..." (empty hi = open)
ExponentWindow parse_window(const std::string& s, size_t n) {
    if (s == "default") return default_weight_window(n);
    ExponentWindow w = ExponentWindow::full(n);
    std::stringstream in(s);
    std::string tok;
    size_t i = 0;
    while (std::getline(in, tok, ',')) {
        if (i >= n) throw CLI::ValidationError("--window", "more intervals than variables");
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--window", "expected lo:hi");
        w.box[i].lo = std::stol(tok.substr(0, colon));
        const std::string hi = tok.substr(colon + 1);
        if (!hi.empty()) w.box[i].hi = std::stol(hi);
        if (w.box[i].empty()) throw CLI::ValidationError("--window", "empty interval " + tok);
        ++i;
    }
    if (i != n) throw CLI::ValidationError("--window", "need one interval per variable");
    return w;
}

std::string monomial(const std::vector<std::string>& vars, const Exp& e) {
    std::string s;
    for (size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        if (!s.empty()) s += " ";
        s += vars[v] + "^" + std::to_string(e[v]);
    }
    return s.empty() ? "1" : s;
}

int emit_report(const json& j, bool pass) {
    std::cout << j.dump(2) << "\n";
    return pass ? 0 : 1;
}

LieDenominator parse_reading(const std::string& s) {
    if (s == "literal") return LieDenominator::Literal;
    if (s == "last") return LieDenominator::Last;
    if (s == "chain") return LieDenominator::Chain;
    if (s == "first") return LieDenominator::First;
    throw CLI::ValidationError("--reading", "one of literal, last, chain, first");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weight functions of the quantum affine sl2 current algebra"};
    app.require_subcommand(1);

    // compute
    auto* compute = app.add_subcommand("compute", "universal weight function W(t1..tn) on a window");
    size_t n = 2;
    std::string window = "default", format = "json", module;
    compute->add_option("--n", n, "number of variables")->check(CLI::Range(0, 6));
    compute->add_option("--window", window, "'default' or lo:hi per variable, e.g. -6:-1,-6:4");
    compute->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    compute->add_option("--module", module, "apply to the top vector of a module (half, one, three-halves, trivial)");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);
    auto* v_closed = verify->add_subcommand("closed-form", "n = 2 against the closed sl2 formula");
    auto* v_anti = verify->add_subcommand("antisymmetry", "regularity and antisymmetry of A*W");
    int lo = -6, hi = 2;
    v_anti->add_option("--n", n)->check(CLI::Range(1, 4));
    v_anti->add_option("--lo", lo);
    v_anti->add_option("--hi", hi);
    auto* v_class = verify->add_subcommand("classical", "classical partition formula against direct projection");
    std::string colors = "1,1", reading = "literal";
    v_class->add_option("--colors", colors, "colors of t1..tn, e.g. 1,2");
    v_class->add_option("--reading", reading, "denominator reading: literal, last, chain, first");
    auto* v_fact = verify->add_subcommand("factorization", "tensor factorization of the weight vector");
    std::string modules = "half,one";
    v_fact->add_option("--n", n)->check(CLI::Range(0, 4));
    v_fact->add_option("--modules", modules, "two module names");
    auto* v_bethe = verify->add_subcommand("bethe", "off-shell Bethe vectors against the weight vector");
    std::string spin = "one";
    v_bethe->add_option("--n", n)->check(CLI::Range(0, 4));
    v_bethe->add_option("--spin", spin);
    auto* v_roots = verify->add_subcommand("roots", "root combinatorics (acceptance criterion 9)");
    auto* v_mods = verify->add_subcommand("modules", "relation suite on every shipped module");
    auto* v_all = verify->add_subcommand("all", "every acceptance criterion");
    std::vector<int> only;
    v_all->add_option("--only", only, "restrict to these criteria");

    // roots
    auto* roots = app.add_subcommand("roots", "affine root system combinatorics");
    roots->require_subcommand(1);
    std::string type = "A1~", word = "0,1";
    int count = 4, height = 8, shift = 1, bound = 6;
    for (auto* sc : {roots->add_subcommand("ladder", "forward and backward root ladders"),
                     roots->add_subcommand("verify-ord1", "convexity condition up to a height"),
                     roots->add_subcommand("verify-shift", "shifted sequence correspondence")}) {
        sc->add_option("--type", type, "A1~, A2~, ...");
        sc->add_option("--word", word, "one period of the index sequence, starting with 0");
    }
    auto* r_ladder = roots->get_subcommand("ladder");
    r_ladder->add_option("--count", count)->check(CLI::NonNegativeNumber);
    auto* r_ord1 = roots->get_subcommand("verify-ord1");
    r_ord1->add_option("--height", height)->check(CLI::PositiveNumber);
    auto* r_shift = roots->get_subcommand("verify-shift");
    r_shift->add_option("--c", shift)->check(CLI::NonNegativeNumber);
    r_shift->add_option("--bound", bound)->check(CLI::PositiveNumber);

    // module
    auto* mod = app.add_subcommand("module", "evaluation modules");
    mod->require_subcommand(1);
    auto* m_val = mod->add_subcommand("validate", "check the defining relations on a module");
    int mode_bound = 3;
    m_val->add_option("--spin", spin, "half, one, three-halves, trivial");
    m_val->add_option("--bound", mode_bound, "modes in [-bound, bound]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    WordCache cache;
    Straightener st;
    cache.load(st);
    int status = 0;
    try {
        if (*compute) {
            const auto w = parse_window(window, n);
            const auto ms = OrderedMultiset::uniform(n);
            if (module.empty()) {
                const auto W = universal_weight(ms, w, st);
                if (format == "json") {
                    std::cout << series_json(W, [](const AlgebraElement& x) { return x.to_json(); }).dump(2) << "\n";
                } else {
                    for (const auto& [e, x] : W.terms) std::cout << monomial(W.vars, e) << " : " << x.to_string() << "\n";
                }
            } else {
                const auto W = weight_vector(module_by_name(module), ms, w, st);
                auto vec_json = [](const Vec& v) {
                    json j = json::array();
                    for (const auto& c : v) j.push_back(c.to_string());
                    return j;
                };
                if (format == "json") {
                    std::cout << series_json(W, vec_json).dump(2) << "\n";
                } else {
                    for (const auto& [e, v] : W.terms) {
                        std::cout << monomial(W.vars, e) << " :";
                        for (const auto& c : v) std::cout << " [" << c.pretty() << "]";
                        std::cout << "\n";
                    }
                }
            }
        } else if (*v_closed) {
            const auto r = check_closed_form(default_weight_window(2), st);
            status = emit_report(r.to_json(), r.pass);
        } else if (*v_anti) {
            const auto r = check_antisymmetry(n, lo, hi, st);
            status = emit_report(r.to_json(), r.pass);
        } else if (*v_class) {
            OrderedMultiset ms;
            for (int c : parse_ints(colors)) {
                ms.ids.push_back(std::to_string(ms.ids.size() + 1));
                ms.colors.push_back(c);
            }
            if (ms.size() == 0 || ms.size() > 4) throw CLI::ValidationError("--colors", "between 1 and 4 colors");
            const auto r = check_classical(ms, parse_reading(reading), default_weight_window(ms.size()));
            status = emit_report(r.to_json(), r.pass);
        } else if (*v_fact) {
            std::vector<std::string> names;
            std::stringstream in(modules);
            for (std::string t; std::getline(in, t, ',');) names.push_back(t);
            if (names.size() != 2) throw CLI::ValidationError("--modules", "expected two module names");
            const auto r = check_factorization(module_by_name(names[0]), module_by_name(names[1]), n,
                                               default_weight_window(n), st);
            status = emit_report(r.to_json(), r.pass);
        } else if (*v_bethe) {
            const auto r = bethe_check(module_by_name(spin), n, st);
            status = emit_report(r.to_json(), r.pass);
        } else if (*v_roots || *v_mods) {
            const auto c = run_criterion(*v_roots ? 9 : 8, st);
            status = emit_report(c.to_json(), c.pass);
        } else if (*v_all) {
            json out = json::array();
            bool pass = true;
            for (int id = 1; id <= kCriteria; ++id) {
                if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
                const auto c = run_criterion(id, st);
                std::cerr << c.line() << "\n";
                out.push_back(c.to_json());
                pass = pass && c.pass;
            }
            status = emit_report({{"status", pass ? "pass" : "fail"}, {"criteria", out}}, pass);
        } else if (*roots) {
            const auto cartan = AffineCartan::parse(type);
            const auto w = parse_ints(word);
            if (*r_ladder) {
                NormalOrdering ord(cartan, w, count);
                json fwd = json::array(), bwd = json::array();
                for (size_t k = 0; k < ord.forward().size(); ++k)
                    fwd.push_back({{"k", k + 1}, {"root", ord.forward()[k]}, {"text", root_text(ord.forward()[k], cartan)}});
                for (size_t l = 0; l < ord.backward().size(); ++l)
                    bwd.push_back({{"k", -static_cast<long>(l)}, {"root", ord.backward()[l]},
                                   {"text", root_text(ord.backward()[l], cartan)}});
                std::cout << json{{"type", cartan.name}, {"word", w}, {"translation", ord.translation()},
                                  {"forward", fwd}, {"backward", bwd}}.dump(2) << "\n";
            } else if (*r_ord1) {
                // ladders long enough to hold every root of this height
                NormalOrdering ord(cartan, w, static_cast<int>(w.size()) * (height + 2));
                const auto r = verify_ord1(ord, height);
                status = emit_report(r.to_json(), r.pass);
            } else {
                const auto r = verify_shift_correspondence(cartan, w, shift, bound);
                status = emit_report(r.to_json(), r.pass);
            }
        } else if (*m_val) {
            const auto r = validate_relations(module_by_name(spin), mode_bound);
            status = emit_report(r.to_json(), r.pass);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        status = 1;
    }
    cache.save(st);
    return status;
}
