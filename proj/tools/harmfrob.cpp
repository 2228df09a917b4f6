// harmfrob: command-line front end for harmonic sums, adjoint p-adic MZVs and the check suites.
#include "harmfrob/relations.hpp"
#include "harmfrob/store.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hf;

namespace {

struct Common {
    std::vector<long> primes;
    std::vector<int> alphas;
    std::optional<long> precision;
    std::string cache_dir;
    std::string format;
    std::string out;
};

void add_common(CLI::App* app, Common& c, bool primes = true) {
    if (primes) {
        app->add_option("--p", c.primes, "prime(s)");
        app->add_option("--alpha", c.alphas, "exponent(s) alpha >= 1");
    }
    app->add_option("--prec", c.precision, "target absolute precision K");
    app->add_option("--cache-dir", c.cache_dir, "persistent cache directory");
    app->add_option("--format", c.format, "text, csv or json");
    app->add_option("--out", c.out, "output file (default stdout)");
}

RunConfig resolve(const Common& c, int largest_weight) {
    RunConfig cfg;
    cfg.apply_env();
    if (!c.primes.empty()) cfg.primes = c.primes;
    if (!c.alphas.empty()) cfg.alphas = c.alphas;
    if (c.precision) cfg.precision = *c.precision;
    if (!c.cache_dir.empty()) cfg.cache_dir = c.cache_dir;
    if (!c.format.empty()) cfg.format = parse_format(c.format);
    cfg.validate(largest_weight);
    if (!cfg.cache_dir.empty()) HarCache::global().attach_store(std::make_shared<CacheStore>(cfg.cache_dir));
    return cfg;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string digits_field(const PAdic& x) {
    std::string s;
    if (x.is_zero()) return s;
    auto d = x.digits();
    for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s;
}

nlohmann::json padic_json(const PAdic& x) {
    nlohmann::json j;
    j["p"] = x.prime();
    j["precision"] = x.precision();
    j["valuation"] = x.valuation();
    j["digits"] = x.is_zero() ? std::vector<long>{} : x.digits();
    j["text"] = x.str();
    return j;
}

// one row per (index, p, alpha)
struct Row {
    std::string index;
    long p;
    int alpha;
    int b = -1;
    PAdic value;
};

std::string render_rows(const std::vector<Row>& rows, OutputFormat f, bool with_b) {
    std::ostringstream os;
    if (f == OutputFormat::csv) {
        os << "index,p,alpha," << (with_b ? "b," : "") << "valuation,precision,digits\n";
        for (auto& r : rows) {
            os << '"' << r.index << "\"," << r.p << ',' << r.alpha << ',';
            if (with_b) os << r.b << ',';
            os << (r.value.is_zero() ? std::string("zero") : std::to_string(r.value.valuation())) << ','
               << r.value.precision() << ",\"" << digits_field(r.value) << "\"\n";
        }
    } else if (f == OutputFormat::json) {
        nlohmann::json a = nlohmann::json::array();
        for (auto& r : rows) {
            nlohmann::json j = padic_json(r.value);
            j["index"] = r.index;
            j["alpha"] = r.alpha;
            if (with_b) j["b"] = r.b;
            a.push_back(j);
        }
        os << a.dump(2) << "\n";
    } else {
        for (auto& r : rows) {
            os << "p=" << r.p << " alpha=" << r.alpha;
            if (with_b) os << " b=" << r.b;
            os << " index=(" << r.index << ") " << r.value.str() << "\n";
        }
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic sums, adjoint p-adic multiple zeta values and identity checks"};
    app.require_subcommand(1);

    Common hc;
    std::string har_index;
    std::optional<long> har_m;
    auto* har_cmd = app.add_subcommand("har", "weighted harmonic sum har_m(I), exact, or har_{p^alpha}(I) p-adically");
    har_cmd->add_option("--index", har_index, "composition n_d,...,n_1")->required();
    har_cmd->add_option("--m", har_m, "exact value at this upper bound");
    add_common(har_cmd, hc);

    Common fc;
    std::string fin_index;
    long pmax = 50;
    auto* fin_cmd = app.add_subcommand("finite-mzv", "residues p^-w har_p(I) mod p for p <= pmax");
    fin_cmd->add_option("--index", fin_index, "composition")->required();
    fin_cmd->add_option("--pmax", pmax, "largest prime");
    add_common(fin_cmd, fc, false);

    Common zc;
    int zeta_n = 2;
    auto* zeta_cmd = app.add_subcommand("zeta1", "depth-one p-adic zeta value");
    zeta_cmd->add_option("--n", zeta_n, "argument n >= 2");
    add_common(zeta_cmd, zc);

    Common ac;
    std::string adj_index;
    std::vector<int> adj_b{0};
    std::optional<int> adj_cutoff;
    bool adj_presented = false;
    auto* adj_cmd = app.add_subcommand("adjoint", "adjoint coefficients at e0^b e1 word(I)");
    adj_cmd->add_option("--index", adj_index, "composition")->required();
    adj_cmd->add_option("--b", adj_b, "e0 exponent(s)");
    adj_cmd->add_option("--cutoff", adj_cutoff, "fixed weight cutoff of the expansion");
    adj_cmd->add_flag("--presented", adj_presented, "apply the (-1)^depth sign of the definition");
    add_common(adj_cmd, ac);

    Common ec;
    std::string exp_index;
    int exp_cutoff = 0;
    auto* exp_cmd = app.add_subcommand("expand-sigma", "expansion of har_{p^alpha m}(I) in har_m and har_{p^alpha}");
    exp_cmd->add_option("--index", exp_index, "composition")->required();
    exp_cmd->add_option("--cutoff", exp_cutoff, "grade cutoff N (default: the weight)");
    add_common(exp_cmd, ec, false);

    std::string suite = "default";
    std::string verify_out;
    std::optional<unsigned long long> verify_seed;
    unsigned threads = 1;
    bool no_timing = false;
    auto* ver_cmd = app.add_subcommand("verify", "run a suite of identity checks");
    ver_cmd->add_option("--suite", suite, "quick, default, dmr or contraction");
    ver_cmd->add_option("--out", verify_out, "JSON report file");
    ver_cmd->add_option("--seed", verify_seed, "seed for randomized checks");
    ver_cmd->add_option("--threads", threads, "worker threads");
    ver_cmd->add_flag("--no-timing", no_timing, "write millis = 0 for byte-stable reports");

    std::string gc_dir;
    auto* gc_cmd = app.add_subcommand("cache-gc", "compact the cache files");
    gc_cmd->add_option("--cache-dir", gc_dir, "cache directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*har_cmd) {
            Composition I = Composition::parse(har_index);
            RunConfig cfg = resolve(hc, I.weight());
            if (har_m) {
                Rational v = har(*har_m, I);
                if (cfg.format == OutputFormat::json)
                    emit(hc.out, nlohmann::json{{"index", I.str()}, {"m", *har_m}, {"value", v.str()}}.dump(2) + "\n");
                else if (cfg.format == OutputFormat::csv)
                    emit(hc.out, "index,m,value\n\"" + I.str() + "\"," + std::to_string(*har_m) + "," + v.str() + "\n");
                else
                    emit(hc.out, "har_" + std::to_string(*har_m) + "(" + I.str() + ") = " + v.str() + "\n");
                return 0;
            }
            std::vector<Row> rows;
            for (long p : cfg.primes)
                for (int a : cfg.alphas)
                    rows.push_back({I.str(), p, a, -1, HarCache::global().prime_power(p, a, I, cfg.precision)});
            emit(hc.out, render_rows(rows, cfg.format, false));
            return 0;
        }

        if (*fin_cmd) {
            Composition I = Composition::parse(fin_index);
            if (fc.format.empty()) fc.format = "csv";
            RunConfig cfg = resolve(fc, I.weight());
            auto rows = finite_mzv(I, primes_up_to(pmax));
            if (cfg.format == OutputFormat::json) {
                nlohmann::json a = nlohmann::json::array();
                for (auto& r : rows) a.push_back({{"index", r.index.str()}, {"p", r.p}, {"residue", r.residue}});
                emit(fc.out, a.dump(2) + "\n");
            } else {
                emit(fc.out, finite_mzv_csv(rows));
            }
            return 0;
        }

        if (*zeta_cmd) {
            if (zeta_n < 2) throw std::invalid_argument("zeta1 needs n >= 2");
            RunConfig cfg = resolve(zc, zeta_n);
            std::ostringstream os;
            nlohmann::json a = nlohmann::json::array();
            for (long p : cfg.primes)
                for (int al : cfg.alphas) {
                    auto z = zeta_depth1(p, al, zeta_n, cfg.precision);
                    bool zero = z.value.is_zero();
                    if (cfg.format == OutputFormat::json) {
                        auto j = padic_json(z.value);
                        j["alpha"] = al;
                        j["n"] = zeta_n;
                        j["zero_to_precision"] = zero;
                        j["l_stop"] = z.truncation_l;
                        a.push_back(j);
                    } else if (cfg.format == OutputFormat::csv) {
                        if (os.tellp() == 0) os << "index,p,alpha,valuation,precision,digits\n";
                        os << '"' << zeta_n << "\"," << p << ',' << al << ','
                           << (zero ? std::string("zero") : std::to_string(z.value.valuation())) << ','
                           << z.value.precision() << ",\"" << digits_field(z.value) << "\"\n";
                    } else {
                        os << "zeta_{" << p << "," << al << "}(" << zeta_n << ") = " << z.value.str();
                        if (zero) os << "  [zero to precision " << z.value.precision() << "]";
                        os << "\n";
                    }
                }
            emit(zc.out, cfg.format == OutputFormat::json ? a.dump(2) + "\n" : os.str());
            return 0;
        }

        if (*adj_cmd) {
            Composition I = Composition::parse(adj_index);
            int top_b = 0;
            for (int b : adj_b) top_b = std::max(top_b, b);
            RunConfig cfg = resolve(ac, I.weight() + top_b);
            if (adj_cutoff) cfg.weight_cutoff = *adj_cutoff;
            std::vector<Row> rows;
            for (long p : cfg.primes)
                for (int a : cfg.alphas) {
                    AdjointTable T(p, a, cfg.precision, adj_cutoff);
                    for (int b : adj_b)
                        rows.push_back({I.str(), p, a, b, adj_presented ? T.presented(b, I) : T.entry(b, I)});
                }
            emit(ac.out, render_rows(rows, cfg.format, true));
            return 0;
        }

        if (*exp_cmd) {
            Composition I = Composition::parse(exp_index);
            if (I.empty()) throw std::invalid_argument("expand-sigma needs a nonempty index");
            RunConfig cfg = resolve(ec, I.weight());
            auto e = expand_sigma(I, exp_cutoff ? exp_cutoff : I.weight());
            emit(ec.out, cfg.format == OutputFormat::json ? render_json(e) + "\n" : render_text(e));
            return 0;
        }

        if (*ver_cmd) {
            RunConfig cfg;
            cfg.apply_env();
            SuiteOptions o;
            o.seed = verify_seed.value_or(cfg.seed);
            o.threads = threads;
            o.timing = !no_timing;
            if (!cfg.cache_dir.empty()) HarCache::global().attach_store(std::make_shared<CacheStore>(cfg.cache_dir));
            auto reports = run_suite(suite, o);
            emit(verify_out, reports_json(reports, o.timing));
            int failed = 0;
            for (auto& r : reports) {
                bool counts = r.status == "ok" || r.status == "parameter-error";
                if (counts && !r.pass) ++failed;
                std::cerr << (r.pass ? "PASS " : (counts ? "FAIL " : "INFO ")) << r.name << " " << r.params.dump() << "\n";
            }
            std::cerr << reports.size() - static_cast<size_t>(failed) << "/" << reports.size() << " reports without failure\n";
            return failed ? 1 : 0;
        }

        if (*gc_cmd) {
            RunConfig cfg;
            cfg.apply_env();
            if (!gc_dir.empty()) cfg.cache_dir = gc_dir;
            if (cfg.cache_dir.empty()) throw std::invalid_argument("cache-gc needs --cache-dir or HARMFROB_CACHE_DIR");
            CacheStore store(cfg.cache_dir);
            std::cout << store.gc() << " records kept\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
