#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <random>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "patmat/approx.hpp"
#include "patmat/compressed_search.hpp"
#include "patmat/regex_engines.hpp"
#include "patmat/subseq.hpp"
#include "patmat/tps.hpp"
#include "patmat/tree_distance.hpp"
#include "patmat/tree_inclusion.hpp"
#include "patmat/zl.hpp"

using nlohmann::json;
using namespace patmat;

namespace {

constexpr int kExitNoMatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitCorrupt = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path);
    return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("cannot write " + path);
}

LabeledTree read_tree(const std::string& path) {
    return parse_tree(read_file(path));
}

CostFunction read_costs(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::tuple<std::string, std::string, double>> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string a, b;
        double cost;
        if (!(ls >> a >> b >> cost))
            throw std::invalid_argument("bad cost line: " + line);
        entries.emplace_back(a, b, cost);
    }
    return CostFunction::from_table(entries);
}

void print_number(double d) {
    if (d == static_cast<long long>(d))
        std::cout << static_cast<long long>(d) << "\n";
    else
        std::cout << d << "\n";
}

void print_positions(const std::vector<int>& pos, const std::string& prefix) {
    if (pos.empty()) return;
    std::cout << prefix;
    for (size_t i = 0; i < pos.size(); ++i)
        std::cout << (i ? " " : "") << pos[i];
    std::cout << "\n";
}

struct Options {
    bool json = false;
    int threads = 1;
    int word_bits = 64;
};

EngineOptions engine_options(const Options& g, const std::string& engine) {
    EngineOptions opt;
    opt.word_bits = g.word_bits;
    if (const char* env = std::getenv("PATMAT_FR_BUDGET"))
        opt.fr_budget = std::strtoll(env, nullptr, 10);
    if (engine == "classic") opt.engine = RegexEngine::Classic;
    else if (engine == "bitpar") opt.engine = RegexEngine::Simple;
    else if (engine == "separator") opt.engine = RegexEngine::Separator;
    else if (engine == "fr") opt.engine = RegexEngine::FourRussians;
    else if (engine == "nested") opt.engine = RegexEngine::Nested;
    else opt.engine = RegexEngine::Auto;
    return opt;
}

// run `work(i)` for i in [0, n) on up to `threads` workers
void parallel_for(int n, int threads, const std::function<void(int)>& work) {
    int t = std::max(1, std::min(threads, n));
    if (t == 1) {
        for (int i = 0; i < n; ++i) work(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < t; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) work(i);
        });
    for (auto& th : pool) th.join();
}

int run_bench(const std::string& suite, const Options& g);

int run(int argc, char** argv) {
    CLI::App app{"pattern matching toolkit: trees, regular expressions, "
                 "approximate search, and compressed texts"};
    app.require_subcommand(1);
    Options g;
    app.add_flag("--json", g.json, "machine-readable JSON output");
    app.add_option("--threads", g.threads, "worker threads for multi-file search")
        ->check(CLI::PositiveNumber);
    app.add_option("--word-bits", g.word_bits, "emulated machine word width")
        ->check(CLI::Range(8, 64));

    std::string file_a, file_b, pattern, out_path, costs_path, scheme = "zl78";
    std::string engine = "auto";
    std::vector<std::string> files;
    bool unit = false, use_fr = false, report_roots = false, fast = false;
    int k = 0, d = 0, tau = 4, micro_size = 0;

    auto* tree_ed = app.add_subcommand("tree-ed", "tree edit distance");
    tree_ed->add_option("A", file_a)->required();
    tree_ed->add_option("B", file_b)->required();
    tree_ed->add_flag("--unit", unit, "unit costs (default)");
    tree_ed->add_option("--costs", costs_path, "cost table file");

    auto* tree_align = app.add_subcommand("tree-align", "tree alignment distance");
    tree_align->add_option("A", file_a)->required();
    tree_align->add_option("B", file_b)->required();
    tree_align->add_flag("--unit", unit, "unit costs (default)");
    tree_align->add_option("--costs", costs_path, "cost table file");

    auto* tree_incl = app.add_subcommand("tree-incl", "ordered tree inclusion");
    tree_incl->add_option("P", file_a)->required();
    tree_incl->add_option("T", file_b)->required();
    tree_incl->add_flag("--report-roots", report_roots,
                        "print preorder numbers of including subtree roots");

    auto* tps = app.add_subcommand("tps", "tree path subsequence matching");
    tps->add_option("P", file_a)->required();
    tps->add_option("T", file_b)->required();
    tps->add_flag("--fast", fast, "micro-tree bit-state traversal");
    tps->add_option("--micro-size", micro_size, "micro tree size (0 = default)");

    auto* regex = app.add_subcommand("regex", "regular expression search");
    regex->add_option("PATTERN", pattern)->required();
    regex->add_option("FILE", file_a)->required();
    regex->add_option("--engine", engine)
        ->check(CLI::IsMember({"classic", "bitpar", "separator", "fr", "nested",
                               "auto"}));

    auto* ed = app.add_subcommand("ed", "string edit distance");
    ed->add_option("A", file_a)->required();
    ed->add_option("B", file_b)->required();
    ed->add_flag("--fr", use_fr, "tabulated cell-wise evaluation");

    auto* agrep = app.add_subcommand("agrep", "approximate string search");
    agrep->add_option("-k", k, "error threshold")->required();
    agrep->add_option("PATTERN", pattern)->required();
    agrep->add_option("FILE", file_a)->required();

    auto* aregex = app.add_subcommand("aregex", "approximate regex search");
    aregex->add_option("-d", d, "error threshold")->required();
    aregex->add_option("PATTERN", pattern)->required();
    aregex->add_option("FILE", file_a)->required();

    auto* subseq = app.add_subcommand("subseq", "subsequence index");
    auto* sq_build = subseq->add_subcommand("build", "build an index");
    sq_build->add_option("FILE", file_a)->required();
    sq_build->add_option("-o", out_path, "output index path")->required();
    auto* sq_query = subseq->add_subcommand("query", "query an index");
    sq_query->add_option("IDX", file_a)->required();
    sq_query->add_option("PATTERN", pattern)->required();
    subseq->require_subcommand(1);

    auto* zl = app.add_subcommand("zl", "dictionary compression");
    auto* zl_c = zl->add_subcommand("compress", "compress a file");
    zl_c->add_option("FILE", file_a)->required();
    zl_c->add_option("-o", out_path, "output path")->required();
    zl_c->add_option("--scheme", scheme)->check(CLI::IsMember({"zl78", "zlw"}));
    auto* zl_d = zl->add_subcommand("decompress", "decompress a file");
    zl_d->add_option("FILE", file_a)->required();
    zl_d->add_option("-o", out_path, "output path")->required();
    zl->require_subcommand(1);

    auto* zgrep = app.add_subcommand("zgrep",
                                     "approximate search in compressed files");
    zgrep->add_option("-k", k, "error threshold")->required();
    zgrep->add_option("PATTERN", pattern)->required();
    zgrep->add_option("FILE", files, "compressed input files")->required();
    zgrep->add_option("--tau", tau, "special-element spacing");

    auto* zregex = app.add_subcommand("zregex",
                                      "regex search in compressed files");
    zregex->add_option("PATTERN", pattern)->required();
    zregex->add_option("FILE", files, "compressed input files")->required();
    zregex->add_option("--tau", tau, "special-element spacing");

    auto* bench = app.add_subcommand("bench", "timing suites");
    std::string suite;
    bench->add_option("SUITE", suite)->required();

    for (CLI::App* s : app.get_subcommands([](CLI::App*) { return true; })) {
        s->fallthrough();
        for (CLI::App* inner : s->get_subcommands([](CLI::App*) { return true; }))
            inner->fallthrough();
    }
    if (argc <= 1) {
        std::cerr << app.help();
        return kExitUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    if (*tree_ed || *tree_align) {
        if (unit && !costs_path.empty())
            throw CLI::ValidationError("--unit and --costs are exclusive");
        CostFunction c = costs_path.empty() ? CostFunction::unit()
                                            : read_costs(costs_path);
        LabeledTree a = read_tree(file_a), b = read_tree(file_b);
        double dist = *tree_ed ? zhang_shasha(a, b, c)
                               : alignment_distance(a, b, c);
        if (g.json)
            std::cout << json{{"distance", dist}} << "\n";
        else
            print_number(dist);
        return 0;
    }
    if (*tree_incl) {
        LabeledTree p = read_tree(file_a), t = read_tree(file_b);
        NodeList roots = including_subtrees(p, t);
        TreeIndex idx(t);
        std::vector<int> pre;
        for (int v : roots) pre.push_back(idx.pre(v) + 1);
        if (g.json)
            std::cout << json{{"included", !roots.empty()}, {"roots", pre}}
                      << "\n";
        else if (report_roots)
            print_positions(pre, "");
        return roots.empty() ? 1 : 0;
    }
    if (*tps) {
        LabeledTree p = read_tree(file_a), t = read_tree(file_b);
        TpsPairs pairs = fast ? tps_fast(p, t, micro_size) : tps_simple(p, t);
        if (g.json) {
            json rows = json::array();
            for (auto [pi, tj] : pairs) rows.push_back({pi, tj});
            std::cout << json{{"pairs", rows}} << "\n";
        } else {
            for (auto [pi, tj] : pairs)
                std::cout << "p" << pi << " ⊑ t" << tj << "\n";
        }
        return 0;
    }
    if (*regex) {
        RegexAst ast = parse_regex(pattern);
        auto m = regex_search(ast, read_file(file_a), engine_options(g, engine));
        if (g.json)
            std::cout << json{{"matches", m}} << "\n";
        else
            print_positions(m, "");
        return m.empty() ? kExitNoMatch : 0;
    }
    if (*ed) {
        int dist;
        bool fellback = false;
        if (use_fr)
            dist = edit_distance_fr(file_a, file_b, 3, 64, &fellback,
                                    g.word_bits);
        else
            dist = edit_distance(file_a, file_b);
        if (g.json)
            std::cout << json{{"distance", dist}, {"fallback", fellback}}
                      << "\n";
        else
            std::cout << dist << "\n";
        return 0;
    }
    if (*agrep) {
        auto m = approx_positions(pattern, read_file(file_a), k);
        if (g.json)
            std::cout << json{{"matches", m}} << "\n";
        else
            print_positions(m, "");
        return m.empty() ? kExitNoMatch : 0;
    }
    if (*aregex) {
        auto m = approx_regex(parse_regex(pattern), read_file(file_a), d);
        if (g.json)
            std::cout << json{{"matches", m}} << "\n";
        else
            print_positions(m, "");
        return m.empty() ? kExitNoMatch : 0;
    }
    if (*sq_build) {
        SubseqIndex ix = build_index(read_file(file_a));
        std::ostringstream out;
        save_index(ix, out);
        write_file(out_path, out.str());
        if (g.json)
            std::cout << json{{"n", ix.n}, {"sigma", ix.sigma}} << "\n";
        return 0;
    }
    if (*sq_query) {
        std::istringstream in(read_file(file_a));
        SubseqIndex ix = load_index(in);
        bool yes = is_subsequence(ix, pattern);
        if (g.json)
            std::cout << json{{"subsequence", yes}} << "\n";
        else
            std::cout << (yes ? "yes" : "no") << "\n";
        return yes ? 0 : 1;
    }
    if (*zl_c) {
        std::string q = read_file(file_a);
        CompressedText z = zl_compress(
            q, scheme == "zlw" ? ZlScheme::ZLW : ZlScheme::ZL78);
        std::ostringstream out;
        zl_save(z, out);
        write_file(out_path, out.str());
        if (g.json)
            std::cout << json{{"elements", z.elements.size()},
                              {"bytes_in", q.size()},
                              {"bytes_out", out.str().size()}}
                      << "\n";
        return 0;
    }
    if (*zl_d) {
        std::istringstream in(read_file(file_a));
        std::string q = zl_decompress(zl_load(in));
        write_file(out_path, q);
        if (g.json) std::cout << json{{"bytes_out", q.size()}} << "\n";
        return 0;
    }
    if (*zgrep || *zregex) {
        RegexAst ast;
        if (*zregex) ast = parse_regex(pattern);
        int n = static_cast<int>(files.size());
        std::vector<std::vector<int>> matches(n);
        std::vector<std::string> errors(n);
        parallel_for(n, g.threads, [&](int i) {
            try {
                std::istringstream in(read_file(files[i]));
                CompressedText z = zl_load(in);
                matches[i] = *zgrep ? capprox_search(z, pattern, k, tau)
                                    : cregex_search(z, ast, tau);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        });
        bool any = false;
        for (int i = 0; i < n; ++i) {
            if (!errors[i].empty()) throw ContainerError(errors[i]);
            any = any || !matches[i].empty();
            std::string prefix = n > 1 ? files[i] + ": " : "";
            if (g.json)
                std::cout << json{{"file", files[i]}, {"matches", matches[i]}}
                          << "\n";
            else
                print_positions(matches[i], prefix);
        }
        return any ? 0 : kExitNoMatch;
    }
    if (*bench) return run_bench(suite, g);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ContainerError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

namespace {

// minimal wall-clock suites; the standalone benchmark binary covers the same
// ground with statistical rigor
int run_bench(const std::string& suite, const Options& g) {
    using clock = std::chrono::steady_clock;
    std::mt19937 rng(42);
    auto random_text = [&](int len, int sigma) {
        std::string s(len, '\0');
        for (char& c : s)
            c = static_cast<char>(
                'a' + std::uniform_int_distribution<int>(0, sigma - 1)(rng));
        return s;
    };
    auto report = [&](const std::string& name, double value,
                      const std::string& unit) {
        if (g.json)
            std::cout << json{{"name", name}, {"value", value}, {"unit", unit}}
                      << "\n";
        else
            std::cout << name << ": " << value << " " << unit << "\n";
    };

    if (suite == "regex-engines") {
        std::string q = random_text(200000, 3);
        for (int m : {8, 24, 60}) {
            std::string r;
            for (int i = 0; i < m / 4; ++i) r += "(a|b)c*";
            RegexAst ast = parse_regex(r);
            for (auto [name, eng] :
                 std::initializer_list<std::pair<const char*, RegexEngine>>{
                     {"classic", RegexEngine::Classic},
                     {"bitpar", RegexEngine::Simple},
                     {"separator", RegexEngine::Separator},
                     {"fr", RegexEngine::FourRussians},
                     {"nested", RegexEngine::Nested}}) {
                EngineOptions opt;
                opt.engine = eng;
                opt.word_bits = g.word_bits;
                auto t0 = clock::now();
                auto matches = regex_search(ast, q, opt);
                double ns = std::chrono::duration<double, std::nano>(
                                clock::now() - t0)
                                .count();
                report("regex-engines/" + std::string(name) + "/m=" +
                           std::to_string(m),
                       ns / q.size(), "ns/char");
                if (matches.size() > q.size()) return 1;  // keep it observable
            }
        }
        return 0;
    }
    if (suite == "zl") {
        for (int sigma : {2, 26}) {
            std::string q = random_text(1 << 20, sigma);
            auto t0 = clock::now();
            CompressedText z = zl_compress(q, ZlScheme::ZL78);
            double secs =
                std::chrono::duration<double>(clock::now() - t0).count();
            std::ostringstream out;
            zl_save(z, out);
            report("zl/compress/sigma=" + std::to_string(sigma),
                   q.size() / secs / 1e6, "MB/s");
            report("zl/ratio/sigma=" + std::to_string(sigma),
                   static_cast<double>(out.str().size()) / q.size(), "out/in");
            std::string p = random_text(6, sigma);
            t0 = clock::now();
            auto matches = capprox_search(z, p, 1, 8);
            secs = std::chrono::duration<double>(clock::now() - t0).count();
            report("zl/capprox/sigma=" + std::to_string(sigma),
                   q.size() / secs / 1e6, "MB/s");
            if (matches.size() > q.size()) return 1;
        }
        return 0;
    }
    if (suite == "ed") {
        std::string a = random_text(3000, 26), b = random_text(3000, 26);
        auto t0 = clock::now();
        int plain = edit_distance(a, b);
        double t_plain =
            std::chrono::duration<double>(clock::now() - t0).count();
        t0 = clock::now();
        int fr = edit_distance_fr(a, b, 3, 100);
        double t_fr = std::chrono::duration<double>(clock::now() - t0).count();
        if (plain != fr) return 1;
        report("ed/plain", t_plain * 1e3, "ms");
        report("ed/fr", t_fr * 1e3, "ms");
        return 0;
    }
    std::cerr << "unknown suite: " << suite
              << " (available: regex-engines, zl, ed)\n";
    return kExitUsage;
}

}  // namespace
