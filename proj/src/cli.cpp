#include "frechet/cli.hpp"

#include "frechet/convex_order.hpp"
#include "frechet/extremal_search.hpp"
#include "frechet/pmf_io.hpp"
#include "frechet/poly_ideal.hpp"
#include "frechet/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace frechet::cli {

namespace {

struct Options {
    std::size_t d = 0;
    std::int64_t s = 0;
    std::int64_t t = 0;
    std::string pmf_path;
    std::string poly;
    std::size_t max_support = 0;
    bool force_large_d = false;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
    std::string J;
    std::string K;
    std::size_t max_J = 2;
    std::string out_path;
    bool resume = false;
    std::uint64_t start = 0;
    std::uint64_t limit = 0;
    std::string emit = "poly";
    std::string l;
    std::size_t tau = 0;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Json result_json(const SearchResult& r) {
    Json j;
    j["coefficients"] = rat_array(r.coefficients);
    j["polynomial"] = r.polynomial.str();
    j["pmf"] = pmf_json(r.pmf);
    j["extremal"] = r.certificate.is_extremal;
    return j;
}

Json spec_json(const SearchSpec& spec) {
    Json J = Json::array();
    for (const Bits& a : spec.J) J.push_back(monomial_name(a));
    return Json{{"J", J}, {"K", spec.K}};
}

// First unvisited cursor of an existing sweep output: one past the last
// record, or the "next_cursor" line each finished run appends.
std::optional<std::uint64_t> resume_cursor(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::optional<std::uint64_t> cursor;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const Json j = Json::parse(line, nullptr, false);
        if (j.is_discarded()) continue;
        std::optional<std::uint64_t> next;
        if (j.contains("next_cursor")) next = j["next_cursor"].get<std::uint64_t>();
        else if (j.contains("cursor")) next = j["cursor"].get<std::uint64_t>() + 1;
        if (next && (!cursor || *next > *cursor)) cursor = next;
    }
    return cursor;
}

class Runner {
public:
    Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

    FrechetClass cls() const { return FrechetClass(o.d, o.s, o.t); }

    Pmf pmf() const {
        if (o.pmf_path == "-") return read_pmf(cls(), in_);
        return read_pmf_file(cls(), o.pmf_path);
    }

    void class_info() {
        const FrechetClass c = cls();
        Json j;
        j["d"] = c.d();
        j["s"] = c.s();
        j["t"] = c.t();
        j["p"] = c.p().str();
        j["q"] = c.q().str();
        j["c"] = c.c().str();
        j["a"] = c.a().str();
        j["a1"] = c.a1();
        j["a2"] = c.a2();
        j["pd"] = c.pd().str();
        j["j_max"] = j_max(c.d(), c.p());
        j["j_min"] = j_min(c.d(), c.p());
        Json pts = Json::array();
        for (const RatVector& v : vanishing_points(c)) pts.push_back(rat_array(v));
        j["vanishing_points"] = pts;
        Json gens = Json::array();
        for (const auto& g : groebner_generators(c)) gens.push_back(g.name() + " = " + g.str());
        j["groebner_generators"] = gens;
        if (c.d() <= 6) {
            const RatMatrix h = build_H(c);
            Json rows = Json::array();
            for (std::size_t r = 0; r < h.rows(); ++r) rows.push_back(rat_array(h.row(r)));
            j["H"] = rows;
        }
        out_ << j.dump(2) << '\n';
    }

    void validate() {
        const Pmf f = pmf();
        out_ << Json{{"valid", true}, {"support_size", f.support_size()}}.dump() << '\n';
    }

    void to_poly() { out_ << pmf_to_poly(pmf()).str() << '\n'; }

    void from_poly() {
        const FrechetClass c = cls();
        write_pmf(out_, type0_pmf(MultilinearPoly::parse(c.d() - 1, o.poly), c));
    }

    void kernel() {
        Json j = Json::array();
        for (const RatVector& v : kernel_basis(cls())) j.push_back(rat_array(v));
        out_ << j.dump() << '\n';
    }

    void classify() { out_ << to_string(classify_pmf(pmf())) << '\n'; }

    void extremal_check() {
        const ExtremalCertificate cert = is_extremal(pmf());
        out_ << Json{{"extremal", cert.is_extremal},
                     {"rank_found", cert.rank_found.get_str()},
                     {"rank_required", cert.rank_required.get_str()}}
                    .dump()
             << '\n';
    }

    void enumerate() {
        EnumerationOptions opts;
        opts.max_support = o.max_support;
        opts.force_large_d = o.force_large_d;
        opts.threads = o.threads;
        const auto vertices = enumerate_extremals_bruteforce(cls(), opts);
        for (std::size_t i = 0; i < vertices.size(); ++i)
            out_ << Json{{"vertex", i + 1}, {"support", pmf_json(vertices[i])}}.dump() << '\n';
        err_ << vertices.size() << " vertices\n";
    }

    SearchSpec spec() const {
        const std::size_t n = o.d - 1;
        SearchSpec sp;
        for (const std::string& m : split(o.J, ',')) sp.J.push_back(parse_monomial(n, m));
        for (const std::string& k : split(o.K, ',')) {
            std::size_t used = 0;
            const unsigned long v = std::stoul(k, &used);
            if (used != k.size()) throw std::invalid_argument("bad row index '" + k + "'");
            sp.K.push_back(v);
        }
        return sp;
    }

    void search_verb() {
        const SearchSpec sp = spec();
        for (const SearchResult& r : search(sp, cls())) {
            Json j;
            j["spec"] = spec_json(sp);
            j.update(result_json(r));
            out_ << j.dump() << '\n';
        }
    }

    void sweep_verb() {
        SweepOptions opts;
        opts.max_J = o.max_J;
        opts.start_cursor = o.start;
        if (o.limit) opts.limit = o.limit;
        std::ofstream file;
        std::ostream* sink = &out_;
        if (!o.out_path.empty()) {
            if (o.resume) {
                if (auto c = resume_cursor(o.out_path)) opts.start_cursor = std::max(opts.start_cursor, *c);
            }
            file.open(o.out_path, o.resume ? std::ios::app : std::ios::trunc);
            if (!file) throw std::invalid_argument("cannot write '" + o.out_path + "'");
            sink = &file;
        }
        std::size_t records = 0;
        const std::uint64_t end = sweep(cls(), opts, [&](std::uint64_t cursor, const SearchSpec& sp, const std::vector<SearchResult>& rs) {
            for (const SearchResult& r : rs) {
                Json j;
                j["cursor"] = cursor;
                j["spec"] = spec_json(sp);
                j.update(result_json(r));
                *sink << j.dump() << '\n';
                ++records;
            }
            sink->flush();
        });
        *sink << Json{{"next_cursor", end}}.dump() << '\n';
        err_ << records << " records, next cursor " << end << '\n';
    }

    void min_convex() {
        const MinCxConstruction m = min_convex_bernoulli(cls());
        if (o.emit == "poly") {
            out_ << m.polynomial.str() << '\n';
        } else if (o.emit == "pmf") {
            write_pmf(out_, m.pmf);
        } else if (o.emit == "both") {
            out_ << m.polynomial.str() << '\n';
            write_pmf(out_, m.pmf);
        } else {
            Json alphas = Json::array();
            for (const Bits& a : m.alphas) alphas.push_back(monomial_name(a));
            Json betas = Json::array();
            for (const Bits& b : m.betas) betas.push_back(monomial_name(b));
            Json j;
            j["case"] = to_string(m.kind);
            j["route"] = to_string(m.route);
            j["h"] = m.h;
            j["k"] = m.k;
            j["lead_degree"] = m.lead_degree;
            j["sum_support"] = {m.j_low, m.j_high};
            j["alphas"] = alphas;
            j["betas"] = betas;
            j["polynomial"] = m.polynomial.str();
            j["pmf"] = pmf_json(m.pmf);
            out_ << j.dump(2) << '\n';
        }
    }

    void stop_loss_verb() {
        const SumPmf s = sum_pmf(pmf());
        if (!o.l.empty()) {
            out_ << stop_loss(s, Rat::parse(o.l)) << '\n';
            return;
        }
        for (const Rat& l : stop_loss_grid(s.d)) out_ << l << ' ' << stop_loss(s, l) << '\n';
    }

    void moments() {
        const Pmf f = pmf();
        if (o.tau) {
            out_ << crossed_moment_sum(f, o.tau) << '\n';
            return;
        }
        Json sums = Json::object();
        for (std::size_t tau = 2; tau <= f.d(); ++tau) sums[std::to_string(tau)] = crossed_moment_sum(f, tau, true).str();
        out_ << Json{{"crossed_moment_sums", sums},
                     {"mean_second_moment", mean_second_moment(sum_pmf(f)).str()},
                     {"mean_correlation", mean_correlation(f).str()}}
                    .dump(2)
             << '\n';
    }

    void exclusivity() { out_ << exclusivity_order(pmf()) << '\n'; }

    void success_rate() {
        const Rat r = support_success_experiment(cls(), o.trials, o.seed);
        out_ << Json{{"trials", o.trials}, {"seed", o.seed}, {"fraction", r.str()}, {"decimal", r.to_double()}}.dump()
             << '\n';
    }

    void report() { out_ << pmf_report(pmf()).dump(2) << '\n'; }

    Options o;

private:
    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;
};

std::string constraint_name(Constraint c) {
    switch (c) {
        case Constraint::Length: return "length";
        case Constraint::Negative: return "negative entry";
        case Constraint::Sum: return "sum";
        case Constraint::Margin: return "margin";
        case Constraint::Class: return "input";
    }
    return "input";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Runner runner(in, out, err);
    Options& o = runner.o;

    CLI::App app{"Exact tools for the class of d-variate Bernoulli laws with common margin p = s/t"};
    app.name("frechet");
    app.require_subcommand(1);

    std::vector<std::pair<CLI::App*, std::function<void()>>> verbs;
    auto verb = [&](const std::string& name, const std::string& help, std::function<void()> action, bool needs_class = true) {
        CLI::App* sub = app.add_subcommand(name, help);
        if (needs_class) {
            sub->add_option("--d", o.d, "dimension")->required();
            sub->add_option("--s", o.s, "numerator of p")->required();
            sub->add_option("--t", o.t, "denominator of p")->required();
        }
        verbs.emplace_back(sub, std::move(action));
        return sub;
    };
    auto pmf_option = [&](CLI::App* sub) {
        sub->add_option("--pmf", o.pmf_path, "pmf file of \"bits value\" lines, or - for stdin")->required();
    };

    verb("class-info", "constants, vanishing points, generators and H", [&] { runner.class_info(); });
    pmf_option(verb("validate", "check membership of a pmf", [&] { runner.validate(); }));
    pmf_option(verb("to-poly", "polynomial image of a pmf", [&] { runner.to_poly(); }));
    verb("from-poly", "type-0 pmf of a polynomial in the ideal", [&] { runner.from_poly(); })
        ->add_option("--poly", o.poly, "polynomial, e.g. \"1*x1*x2 - 1*x1 - 1*x2 + 1\"")
        ->required();
    verb("kernel-basis", "basis of the kernel of the polynomial map", [&] { runner.kernel(); });
    pmf_option(verb("classify", "type-0, type-1K or type-1", [&] { runner.classify(); }));
    pmf_option(verb("extremal-check", "rank certificate of extremality", [&] { runner.extremal_check(); }));
    {
        CLI::App* sub = verb("enumerate", "all extremal pmfs by exhaustive support search", [&] { runner.enumerate(); });
        sub->add_option("--max-support", o.max_support, "largest support size (default d+1)");
        sub->add_flag("--force-large-d", o.force_large_d, "allow d > 5");
        sub->add_option("--threads", o.threads, "worker threads (default: hardware)");
    }
    {
        CLI::App* sub = verb("search", "extremal pmfs from a choice of monomials J and rows K", [&] { runner.search_verb(); });
        sub->add_option("--J", o.J, "monomials, e.g. x1x2,x1x3")->required();
        sub->add_option("--K", o.K, "rows of the remainder matrix in 2..d, e.g. 2,3");
    }
    {
        CLI::App* sub = verb("sweep", "search over every admissible (J, K) pair", [&] { runner.sweep_verb(); });
        sub->add_option("--max-J", o.max_J, "largest #J")->check(CLI::PositiveNumber);
        sub->add_option("--out", o.out_path, "JSON lines output (default stdout)");
        sub->add_flag("--resume", o.resume, "continue after the last cursor found in --out");
        sub->add_option("--start", o.start, "first cursor to visit");
        sub->add_option("--limit", o.limit, "number of (J, K) pairs to visit");
    }
    verb("min-convex", "member whose sum is minimal in convex order", [&] { runner.min_convex(); })
        ->add_option("--emit", o.emit, "poly, pmf, both or json")
        ->check(CLI::IsMember({"poly", "pmf", "both", "json"}));
    {
        CLI::App* sub = verb("stop-loss", "E[(S - l)^+] of the sum", [&] { runner.stop_loss_verb(); });
        pmf_option(sub);
        sub->add_option("--l", o.l, "retention level, e.g. 3/2 (default: quarter-integer grid)");
    }
    {
        CLI::App* sub = verb("moments", "crossed-moment sums and mean correlation", [&] { runner.moments(); });
        pmf_option(sub);
        sub->add_option("--tau", o.tau, "moment order in 2..d");
    }
    pmf_option(verb("exclusivity", "smallest m with P(S >= m) = 0", [&] { runner.exclusivity(); }));
    {
        CLI::App* sub = verb("success-rate", "how often random d+1 columns of H carry a pmf", [&] { runner.success_rate(); });
        sub->add_option("--trials", o.trials, "number of random column subsets");
        sub->add_option("--seed", o.seed, "random seed")->required();
    }
    pmf_option(verb("report", "JSON summary of a pmf", [&] { runner.report(); }));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        for (auto& [sub, action] : verbs) {
            if (sub->parsed()) action();
        }
        return kOk;
    } catch (const ValidationError& e) {
        err << "error: " << constraint_name(e.constraint());
        if (e.index()) err << ' ' << e.index();
        err << ": " << e.what() << '\n';
        return kInvalid;
    } catch (const InternalConsistencyError& e) {
        err << "internal consistency failure: " << e.what() << '\n';
        return kInternal;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace frechet::cli
