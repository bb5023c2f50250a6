#pragma once

// Command-line front end. `run` takes the argument vector without the
// program name and writes to the given streams, so it is testable in-process.
//
// Exit codes: 0 success, 1 a checked property is false, 2 invalid input or
// usage, 3 unreadable file, 4 malformed rational.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "segmarket/constructive.hpp"
#include "segmarket/diagnostics.hpp"
#include "segmarket/error.hpp"
#include "segmarket/io.hpp"
#include "segmarket/lp.hpp"
#include "segmarket/model.hpp"
#include "segmarket/render.hpp"
#include "segmarket/transfers.hpp"
#include "segmarket/welfare.hpp"

namespace segmarket::cli {

using io::json;

enum Exit : int { Ok = 0, FalseVerdict = 1, BadInput = 2, MissingFile = 3, BadRational = 4 };

inline int exit_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::FileNotFound: return MissingFile;
    case ErrorCode::ParseError: return BadRational;
    default: return BadInput;
    }
}

struct Options {
    bool color = false;
};

namespace detail {

inline std::string join(const std::vector<Rational>& v, const char* sep = ", ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += to_string(v[i]);
    }
    return s;
}

inline std::string flag(bool value, const Options& o) {
    if (!o.color) return value ? "true" : "false";
    return value ? "\x1b[32mtrue\x1b[0m" : "\x1b[31mfalse\x1b[0m";
}

inline json verdict_json(const Verdict& v) { return v.holds ? json(true) : json(false); }

/// Summary figures and structural flags of a segmentation.
inline json report(const Segmentation& seg, const WelfareTable* w = nullptr) {
    json r;
    r["profit"] = io::to_json(total_profit(seg));
    r["consumer_surplus"] = io::to_json(consumer_surplus(seg));
    r["rent"] = io::to_json(rent(seg));
    r["uniform_price"] = io::to_json(uniform_price(seg.market()));
    r["uniform_profit"] = io::to_json(uniform_profit(seg.market()));
    r["efficient"] = seg.efficient();
    r["obedient"] = seg.obedient();
    r["price_marginal"] = io::to_json(price_marginal(seg));
    json binding = json::object();
    for (std::size_t p : seg.price_support()) binding[to_string(seg.grid()[p])] = io::to_json(binding_set(seg, seg.grid()[p]));
    r["binding_sets"] = binding;
    if (seg.efficient()) {
        r["weakly_monotone"] = verdict_json(is_weakly_monotone(seg));
        r["strongly_monotone"] = verdict_json(is_strongly_monotone(seg));
        r["saturated"] = seg.obedient() ? verdict_json(is_saturated(seg)) : json(nullptr);
    } else {
        r["weakly_monotone"] = nullptr;
        r["strongly_monotone"] = nullptr;
        r["saturated"] = nullptr;
    }
    if (w) r["welfare"] = io::to_json(aggregate_welfare(seg, *w));
    return r;
}

inline json with_report(const Segmentation& seg, const WelfareTable* w = nullptr) {
    json j = io::to_json(seg);
    j["report"] = report(seg, w);
    return j;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error(ErrorCode::FileNotFound, "cannot write " + out_path);
    f << text;
}

inline Market load_market(const std::string& path) { return io::market_from_json(io::read_json_file(path)); }
inline Segmentation load_segmentation(const std::string& path) {
    return io::segmentation_from_json(io::read_json_file(path));
}

inline std::string segment_lines(const Segmentation& seg, const std::string& indent = "  ") {
    std::string s;
    for (std::size_t p : seg.price_support()) {
        auto v = seg.segment(p);
        s += indent + "price " + to_string(v.price) + ": (" + join(v.masses) + ")  binding {" +
             join(binding_set(seg, v.price)) + "}\n";
    }
    return s;
}

// --------------------------------------------------------------------------

inline int cmd_solve(const std::string& market_path, const std::string& welfare_path, const std::string& out_path,
                     std::ostream& out) {
    Market m = load_market(market_path);
    WelfareTable w = io::welfare_from_json(io::read_json_file(welfare_path), m.grid());
    auto sol = solve_designer(m, w);
    json j = with_report(sol.segmentation, &w);
    j["value"] = io::to_json(sol.value);
    j["welfare_class"] = {{"redistributive", w.redistributive()},
                          {"strictly_redistributive", w.strictly_redistributive()},
                          {"strongly_redistributive", w.strongly_redistributive()}};
    emit(io::dump(j), out_path, out);
    return Ok;
}

inline int cmd_greedy(const std::string& market_path, const std::string& out_path, std::ostream& out) {
    emit(io::dump(with_report(greedy_segmentation(load_market(market_path)))), out_path, out);
    return Ok;
}

inline int cmd_csmax(const std::string& market_path, const std::string& out_path, std::ostream& out) {
    auto r = cs_max(load_market(market_path));
    json j = with_report(r.segmentation);
    j["value"] = io::to_json(r.surplus);
    emit(io::dump(j), out_path, out);
    return Ok;
}

inline json violations_json(const Segmentation& seg) {
    json a = json::array();
    for (const auto& v : check_obedience(seg))
        a.push_back({{"price", io::to_json(v.price)}, {"deviation", io::to_json(v.deviation)},
                     {"deficit", io::to_json(v.deficit)}});
    return a;
}

inline json rent_json(const Market& m) {
    auto star = sigma_star(m);
    auto analysis = rent_analysis(m);
    json j;
    j["uniform_price"] = io::to_json(uniform_price(m));
    j["uniform_profit"] = io::to_json(uniform_profit(m));
    j["sigma_star"] = {{"sigma", io::to_json(star.candidate.sigma())},
                       {"feasible", star.feasible},
                       {"violations", violations_json(star.candidate)}};
    j["sigma_star_feasible"] = analysis.sigma_star_feasible;
    j["rent"] = io::to_json(analysis.rent);
    j["optimal"] = with_report(analysis.optimal);
    return j;
}

inline int cmd_rent(const std::string& market_path, const std::string& out_path, std::ostream& out) {
    emit(io::dump(rent_json(load_market(market_path))), out_path, out);
    return Ok;
}

inline int cmd_check(const std::string& path, std::ostream& out, const Options& o) {
    Segmentation seg = load_segmentation(path);
    out << "market: ok (" << seg.size() << " types, rows match masses)\n";
    out << "efficient: " << flag(seg.efficient(), o) << '\n';
    out << "obedient: " << flag(seg.obedient(), o) << '\n';
    for (const auto& v : check_obedience(seg))
        out << "  segment " << to_string(v.price) << " prefers " << to_string(v.deviation) << " by "
            << to_string(v.deficit) << '\n';
    bool ok = seg.efficient() && seg.obedient();
    auto line = [&](const char* name, const Verdict& v) {
        out << name << ": " << flag(v.holds, o);
        if (!v.holds) out << "  (" << v.witness << ')';
        out << '\n';
    };
    if (seg.efficient()) {
        if (seg.obedient()) {
            auto sat = is_saturated(seg);
            line("saturated", sat);
            ok = ok && sat.holds;
        } else {
            out << "saturated: n/a (not obedient)\n";
        }
        line("weakly_monotone", is_weakly_monotone(seg));
        line("strongly_monotone", is_strongly_monotone(seg));
    } else {
        out << "saturated: n/a (not efficient)\n";
        out << "weakly_monotone: n/a (not efficient)\n";
        out << "strongly_monotone: n/a (not efficient)\n";
    }
    out << "profit: " << to_string(total_profit(seg)) << '\n';
    out << "consumer_surplus: " << to_string(consumer_surplus(seg)) << '\n';
    out << "rent: " << to_string(rent(seg)) << '\n';
    return ok ? Ok : FalseVerdict;
}

inline int cmd_compare(const std::string& a_path, const std::string& b_path, std::ostream& out) {
    Segmentation a = load_segmentation(a_path);
    Segmentation b = load_segmentation(b_path);
    const Order verdict = compare_redistributive(a, b);
    out << "verdict: " << to_string(verdict) << '\n';
    const std::size_t k = a.size();
    if (k < 2) return Ok;
    const auto c = decompose(difference(a, b));
    out << "decomposition of a - b:\n";
    for (std::size_t i = 1; i < k; ++i) out << "  alpha[" << i << "] = " << to_string(c.alpha[i - 1]) << '\n';
    for (std::size_t kk = 2; kk < k; ++kk)
        for (std::size_t i = 1; i < kk; ++i)
            out << "  beta[" << kk << "," << i << "] = " << to_string(c.beta_at(kk, i)) << '\n';
    return Ok;
}

inline int cmd_implementable(const std::string& path, std::ostream& out, const Options& o) {
    Segmentation seg = load_segmentation(path);
    auto r = is_price_implementable(seg);
    out << "implementable: " << flag(r.implementable, o) << '\n';
    out << "profit: " << to_string(r.profit) << '\n';
    out << "deviation_profit: " << to_string(r.deviation_profit) << '\n';
    out << "gap: " << to_string(r.gap) << '\n';
    if (!r.implementable && r.deviation) {
        out << "profitable deviation with the same price marginal:\n";
        for (std::size_t p = 0; p < seg.size(); ++p) {
            auto v = r.deviation->segment(p);
            if (v.total > 0) out << "  price " << to_string(v.price) << ": (" << join(v.masses) << ")\n";
        }
    }
    return r.implementable ? Ok : FalseVerdict;
}

inline int cmd_render(const std::string& path, const std::string& format, const std::string& out_path,
                      std::ostream& out) {
    Segmentation seg = load_segmentation(path);
    if (format == "ascii") emit(render_ascii(seg), out_path, out);
    else if (format == "svg") emit(render_svg(seg), out_path, out);
    else throw Error(ErrorCode::SchemaViolation, "unknown format \"" + format + "\"");
    return Ok;
}

/// Affine welfare W(λ₂) = a + b·λ₂ under weights (λ₂, λ₂, 1).
inline std::pair<Rational, Rational> affine_welfare(const Segmentation& seg) {
    const auto& g = seg.grid();
    auto at = [&](const Rational& l2) {
        return aggregate_welfare(seg, evaluate(ParetoWeights{{l2, l2, Rational(1)}}, g));
    };
    const Rational a = at(0);
    return {a, at(1) - a};
}

inline int cmd_example_3type(std::ostream& out) {
    const TypeGrid g({1, 2, 3});
    const Market m(g, {Rational(3, 10), Rational(2, 5), Rational(3, 10)});
    const Rational one = 1, two = 2, three = 3;
    out << "market: types (" << join(g.values()) << "), masses (" << join(m.mu()) << ")\n";
    out << "uniform price: " << to_string(uniform_price(m)) << ", uniform profit: " << to_string(uniform_profit(m))
        << ", total surplus: " << to_string(total_surplus(m)) << "\n\n";

    RationalMatrix sa(3, 3);
    sa(0, 0) = Rational(3, 10);
    sa(1, 1) = Rational(2, 5);
    sa(2, 1) = Rational(3, 10);
    const Segmentation a(m, sa);
    out << "(a) type 1 at price 1, types 2 and 3 at price 2\n" << segment_lines(a);

    const std::vector<Transfer> down{make_downward(g, two, two, one, 1), make_downward(g, three, two, one, 1)};
    const Rational delta = max_feasible_mass_lockstep(a, down);
    out << "(a) -> (b): move types 2 and 3 from price 2 to price 1, largest feasible delta = " << to_string(delta)
        << "\n";
    const Segmentation b = apply(apply(a, delta * down[0]), delta * down[1]);
    out << "(b)\n" << segment_lines(b);
    out << "  consumer surplus: " << to_string(consumer_surplus(b)) << " (maximum " << to_string(cs_max(m).surplus)
        << ")\n";
    out << "  saturated: " << (is_saturated(b).holds ? "true" : "false") << "  (" << is_saturated(b).witness << ")\n";

    const Transfer swap_dir = make_redistributive(g, two, three, one, two, 1);
    const Rational eps = max_feasible_mass(b, swap_dir);
    out << "(b) -> (c): swap type 2 into price 1 against type 3 into price 2, largest feasible epsilon = "
        << to_string(eps) << "\n";
    const Segmentation c = apply(b, eps * swap_dir);
    out << "(c)\n" << segment_lines(c);
    out << "  consumer surplus: " << to_string(consumer_surplus(c)) << ", saturated: "
        << (is_saturated(c).holds ? "true" : "false") << ", strongly monotone: "
        << (is_strongly_monotone(c).holds ? "true" : "false") << "\n";

    const Rational comp_eps = c.mass(2, 0);
    const Transfer comp = make_compensated(c, two, one, three, comp_eps);
    const Segmentation d = apply(c, comp);
    out << "(c) -> (d): compensated transfer at type 2 from price 1 with top type 3, epsilon = " << to_string(comp_eps)
        << ", upward factor " << to_string(compensation_factor(g, 1)) << "\n";
    out << "(d)\n" << segment_lines(d);
    out << "  saturated: " << (is_saturated(d).holds ? "true" : "false") << ", strongly monotone: "
        << (is_strongly_monotone(d).holds ? "true" : "false") << ", equals greedy: "
        << (d == greedy_segmentation(m) ? "true" : "false") << "\n\n";

    out << "order: (b) vs (a) " << to_string(compare_redistributive(b, a)) << ", (c) vs (b) "
        << to_string(compare_redistributive(c, b)) << ", (d) vs (c) " << to_string(compare_redistributive(d, c))
        << "\n";

    const auto [ca, cb] = affine_welfare(c);
    const auto [da, db] = affine_welfare(d);
    const Rational threshold = (da - ca) / (cb - db);
    out << "welfare with weights (l2, l2, 1): (c) = " << to_string(ca) << " + " << to_string(cb) << " l2, (d) = "
        << to_string(da) << " + " << to_string(db) << " l2\n";
    out << "(c) is optimal if and only if l2 <= " << to_string(threshold) << "\n";
    for (const Rational& l2 : {Rational(2), threshold, Rational(10)}) {
        const auto w = evaluate(ParetoWeights{{l2, l2, Rational(1)}}, g);
        out << "  l2 = " << to_string(l2) << ": optimum " << to_string(solve_designer(m, w).value) << ", (c) "
            << to_string(aggregate_welfare(c, w)) << ", (d) " << to_string(aggregate_welfare(d, w)) << "\n";
    }

    const auto star = sigma_star(m);
    const auto rents = rent_analysis(m);
    out << "\nsigma*: feasible " << (star.feasible ? "true" : "false");
    for (const auto& v : check_obedience(star.candidate))
        out << ", segment " << to_string(v.price) << " prefers " << to_string(v.deviation) << " by "
            << to_string(v.deficit);
    out << "\nrent: " << to_string(rents.rent) << " (profit " << to_string(total_profit(rents.optimal)) << " vs "
        << to_string(uniform_profit(m)) << ")\n";
    return Ok;
}

inline int cmd_batch(const std::vector<std::string>& files, unsigned jobs, std::ostream& out) {
    std::vector<json> results(files.size());
    std::vector<int> codes(files.size(), Ok);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            try {
                json r = rent_json(load_market(files[i]));
                r["file"] = files[i];
                results[i] = std::move(r);
            } catch (const Error& e) {
                results[i] = {{"file", files[i]}, {"error", e.what()}};
                codes[i] = exit_code(e.code());
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    out << io::dump(json(results));
    for (int c : codes)
        if (c != Ok) return c;
    return Ok;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Options opts = {}) {
    CLI::App app{"Optimal redistributive market segmentation, in exact arithmetic."};
    app.name("segmarket");
    app.require_subcommand(1);
    int code = Ok;
    std::string a, b, out_path, format = "ascii";
    std::vector<std::string> files;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

    auto* solve = app.add_subcommand("solve", "Optimal segmentation for a welfare function (designer LP)");
    solve->add_option("market", a, "market JSON")->required();
    solve->add_option("welfare", b, "welfare JSON")->required();
    solve->add_option("-o,--out", out_path, "write JSON here instead of stdout");

    auto* greedy = app.add_subcommand("greedy", "Greedy strongly monotone saturated segmentation");
    greedy->add_option("market", a, "market JSON")->required();
    greedy->add_option("-o,--out", out_path, "write JSON here instead of stdout");

    auto* check = app.add_subcommand("check", "Validate a segmentation and test its structural properties");
    check->add_option("segmentation", a, "segmentation JSON")->required();

    auto* compare = app.add_subcommand("compare", "Redistributive order between two segmentations");
    compare->add_option("a", a, "segmentation JSON")->required();
    compare->add_option("b", b, "segmentation JSON")->required();

    auto* rent_cmd = app.add_subcommand("rent", "Two-segment candidate and the seller's redistributive rent");
    rent_cmd->add_option("market", a, "market JSON")->required();
    rent_cmd->add_option("-o,--out", out_path, "write JSON here instead of stdout");

    auto* impl = app.add_subcommand("implementable", "Price-based implementability of a segmentation");
    impl->add_option("segmentation", a, "segmentation JSON")->required();

    auto* csmax = app.add_subcommand("csmax", "Consumer-surplus maximizing segmentation");
    csmax->add_option("market", a, "market JSON")->required();
    csmax->add_option("-o,--out", out_path, "write JSON here instead of stdout");

    auto* render = app.add_subcommand("render", "Draw a segmentation on the type-price grid");
    render->add_option("segmentation", a, "segmentation JSON")->required();
    render->add_option("-f,--format", format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));
    render->add_option("-o,--out", out_path, "write the picture here instead of stdout");

    auto* example = app.add_subcommand("example-3type", "Walk through the three-type example");

    auto* batch = app.add_subcommand("batch", "Rent analysis for many market files in parallel");
    batch->add_option("markets", files, "market JSON files")->required();
    batch->add_option("-j,--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? Ok : BadInput;
    }

    try {
        if (*solve) code = detail::cmd_solve(a, b, out_path, out);
        else if (*greedy) code = detail::cmd_greedy(a, out_path, out);
        else if (*check) code = detail::cmd_check(a, out, opts);
        else if (*compare) code = detail::cmd_compare(a, b, out);
        else if (*rent_cmd) code = detail::cmd_rent(a, out_path, out);
        else if (*impl) code = detail::cmd_implementable(a, out, opts);
        else if (*csmax) code = detail::cmd_csmax(a, out_path, out);
        else if (*render) code = detail::cmd_render(a, format, out_path, out);
        else if (*example) code = detail::cmd_example_3type(out);
        else if (*batch) code = detail::cmd_batch(files, jobs, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.code());
    }
    return code;
}

}  // namespace segmarket::cli
