#include "epw/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>

using namespace epw;
using io::json;

namespace {

/** Bad input from the command line or a file; maps to exit code 2. */
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Collects one command's output as text lines and a JSON object. */
struct Output {
    std::uint64_t seed = 1;
    bool as_json = false;
    json doc = json::object();
    std::vector<std::string> lines;
    std::string first_failure;

    void put(const std::string& key, json value, const std::string& text)
    {
        doc[key] = std::move(value);
        lines.push_back(key + ": " + text);
    }
    void put(const std::string& key, const std::string& value) { put(key, value, value); }
    void check(const std::string& name, bool pass)
    {
        doc["checks"].push_back({{"name", name}, {"pass", pass}});
        lines.push_back(std::string(pass ? "PASS " : "FAIL ") + name);
        if (!pass && first_failure.empty())
            first_failure = name;
    }
    int finish() const
    {
        if (as_json) {
            json out = {{"seed", seed}};
            for (auto it = doc.begin(); it != doc.end(); ++it)
                out[it.key()] = it.value();
            out["ok"] = first_failure.empty();
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "seed " << seed << "\n";
            for (const auto& l : lines)
                std::cout << l << "\n";
            if (!first_failure.empty())
                std::cout << "first failure: " << first_failure << "\n";
        }
        return first_failure.empty() ? 0 : 1;
    }
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    return out;
}

RatVector parse_list(const std::string& s, std::size_t n, const std::string& what)
{
    auto parts = split(s, ',');
    if (parts.size() != n)
        throw UsageError(what + " needs " + std::to_string(n) + " comma-separated entries");
    RatVector v;
    for (const auto& p : parts) {
        try {
            v.push_back(parse_rational(p));
        } catch (const std::exception&) {
            throw UsageError(what + ": cannot read '" + p + "'");
        }
    }
    return v;
}

json load(const std::string& path)
{
    try {
        return io::read_file(path);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

template <typename F>
auto schema(F&& f)
{
    try {
        return f();
    } catch (const io::SchemaError& e) {
        throw UsageError(e.what());
    }
}

EvenLattice named_lattice(const std::string& name)
{
    if (name == "lambda")
        return lambda().lattice;
    if (name == "lambda_tilde")
        return lambda_tilde();
    if (name == "gamma")
        return gamma().lattice;
    if (name == "gamma_tilde")
        return gamma_tilde().lattice;
    if (name == "phi")
        return phi().lattice;
    if (name == "phi_tilde")
        return phi_tilde().lattice;
    if (name == "e8")
        return EvenLattice(e8_negative());
    throw UsageError("unknown lattice '" + name + "'");
}

EvenLattice pick_lattice(const std::string& file, const std::string& name)
{
    if (!file.empty())
        return schema([&] { return io::lattice_from_json(load(file)); });
    return named_lattice(name);
}

/** "2*e1 - e3 + e2" over named vectors, or a comma list of integer coordinates. */
IntVector parse_lattice_vector(const std::string& text, const EvenLattice& l)
{
    if (text.find(',') != std::string::npos) {
        RatVector r = parse_list(text, l.rank(), "vector");
        IntVector v;
        for (const auto& x : r) {
            if (x.get_den() != 1)
                throw UsageError("vector entries must be integers");
            v.push_back(x.get_num());
        }
        return v;
    }
    IntVector v(l.rank());
    std::string s;
    for (char c : text)
        if (c != ' ')
            s += c;
    std::size_t pos = 0;
    if (s.empty())
        throw UsageError("empty vector expression");
    while (pos < s.size()) {
        long sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        long coeff = 1;
        std::size_t digits = pos;
        while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits])))
            ++digits;
        if (digits > pos) {
            coeff = std::stol(s.substr(pos, digits - pos));
            pos = digits;
            if (pos < s.size() && s[pos] == '*')
                ++pos;
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-')
            ++end;
        std::string name = s.substr(pos, end - pos);
        if (!l.has(name))
            throw UsageError("lattice has no named vector '" + name + "'");
        const IntVector& e = l.vec(name);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += sign * coeff * e[i];
        pos = end;
    }
    return v;
}

std::string str(const std::vector<Integer>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + v[i].get_str();
    return s + ")";
}

json ints(const std::vector<Integer>& v) { return io::vector_json(v); }

struct Common {
    std::uint64_t seed = 1;
    std::string format = "text";
};

struct FrameArgs {
    std::string frame;
    std::string point;
};

Vec6 pick_point(const FrameArgs& a)
{
    return a.point.empty() ? ext::unit(0) : parse_list(a.point, 6, "point");
}

// ---------------------------------------------------------------------------
// Commands

int cmd_local_sextic(Output& out, const FrameArgs& a)
{
    LagrangianFrame frame = a.frame.empty() ? random_graph_instance(out.seed).a
                                            : schema([&] { return io::frame_from_json(load(a.frame)); });
    Vec6 v0 = pick_point(a);
    Chart c = make_chart(frame, v0, out.seed);
    LocalSextic s = local_sextic(c);
    std::size_t k = degeneracy_dim(frame, v0);
    out.put("k", k, std::to_string(k));
    long deg = s.f.is_zero() ? -1 : long(s.f.degree());
    out.put("degree", deg, s.f.is_zero() ? "identically zero" : std::to_string(deg));
    out.put("sextic", io::to_json(s.f), to_text(s.f));
    out.check("degree at most 6", deg <= 6);
    TaylorReport t = taylor_order_check(c, s, {});
    for (const auto& ch : t.checks)
        out.check(ch.name, ch.pass);
    return out.finish();
}

int cmd_double_cover(Output& out, const FrameArgs& a)
{
    Chart c;
    std::optional<RatMatrix> kernel;
    if (a.frame.empty()) {
        GraphInstance g = normal_form_instance(out.seed);
        c = chart_from_basis(g.a, g.chart);
        kernel = g.kernel;
    } else {
        LagrangianFrame frame = schema([&] { return io::frame_from_json(load(a.frame)); });
        c = make_chart(frame, pick_point(a), out.seed);
    }
    SchurData s = schur_complement(c, kernel);
    out.put("k", s.k, std::to_string(s.k));
    out.check("Schur identity", schur_identity_holds(s, local_sextic(c)));
    DoubleCoverIdeal dc = double_cover_ideal(s);
    json gens = json::array();
    std::string text;
    for (const auto& g : dc.generators) {
        gens.push_back(to_text(g));
        text += "\n  " + to_text(g);
    }
    out.put("generators", gens, std::to_string(dc.generators.size()) + text);
    if (!dc.notice.empty())
        out.put("notice", dc.notice);
    if (!dc.generators.empty()) {
        TangentCone tc = tangent_cone(dc.generators, dc.vars);
        out.put("tangent_dim", tc.tangent_dim, std::to_string(tc.tangent_dim));
        out.put("quadric_span", tc.quadric_span, std::to_string(tc.quadric_span));
        out.put("max_quadric_rank", tc.max_rank, std::to_string(tc.max_rank));
    }
    return out.finish();
}

int cmd_sextic_sing(Output& out, const std::string& poly, const std::string& file, const std::string& point)
{
    MultiPoly f = file.empty() ? [&] {
        try {
            return parse_poly(poly, make_vars({"x", "y", "z"}));
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }()
                               : schema([&] { return io::poly_from_json(load(file)); });
    SingularityReport r = sextic_singularity(f, parse_list(point, 3, "point"));
    out.put("multiplicity", r.multiplicity, std::to_string(r.multiplicity));
    out.put("reduced", r.reduced, r.reduced ? "true" : "false");
    out.put("reduced_globally", r.reduced_globally, r.reduced_globally ? "true" : "false");
    out.put("consecutive_triple", r.consecutive_triple, r.consecutive_triple ? "true" : "false");
    out.put("simple", r.simple, r.simple ? "true" : "false");
    return out.finish();
}

int cmd_degeneracy(Output& out, const FrameArgs& a)
{
    LagrangianFrame frame = a.frame.empty() ? random_graph_instance(out.seed).a
                                            : schema([&] { return io::frame_from_json(load(a.frame)); });
    Vec6 v = pick_point(a);
    std::size_t k = degeneracy_dim(frame, v);
    out.put("k", k, std::to_string(k));
    out.put("on_sextic", k >= 1, k >= 1 ? "true" : "false");
    return out.finish();
}

int cmd_strata(Output& out, const std::string& frame_file, const std::string& sub_file, const std::string& point,
               std::size_t level)
{
    Subspace3 w = sub_file.empty() ? Subspace3::span({ext::unit(0), ext::unit(1), ext::unit(2)})
                                   : schema([&] { return io::subspace3_from_json(load(sub_file)); });
    LagrangianFrame a = frame_file.empty() ? [&] {
        ContainingConstraints cc;
        cc.level = level;
        return lagrangian_containing(w, cc, out.seed);
    }()
                                           : schema([&] { return io::frame_from_json(load(frame_file)); });
    SigmaLevel s = sigma_level(a, w);
    out.put("theta", s.theta, s.theta ? "true" : "false");
    out.put("level", s.level, std::to_string(s.level));
    if (!point.empty()) {
        Vec6 v = parse_list(point, 6, "point");
        std::size_t k = degeneracy_dim(a, v);
        out.put("k", k, std::to_string(k));
        if (s.theta && w.contains(v)) {
            bool c = curve_membership(a, w, v);
            BscriptResult b = bscript_membership(a, w, {w}, v);
            bool smooth = curve_smooth_at(a, w, {w}, v);
            out.put("on_curve", c, c ? "true" : "false");
            out.put("in_B", b.member, std::string(b.member ? "true" : "false") + " (relative to the supplied Theta list)");
            out.put("curve_smooth", smooth, smooth ? "true" : "false");
        }
    }
    return out.finish();
}

int cmd_varquad(Output& out, std::size_t cases)
{
    for (const auto& s : run_varquad_suites(out.seed, cases)) {
        out.put(s.name, {{"passed", s.passed}, {"total", s.total}}, std::to_string(s.passed) + "/" + std::to_string(s.total));
        out.check(s.name, s.ok());
    }
    return out.finish();
}

int cmd_disc_group(Output& out, const EvenLattice& l)
{
    DiscGroup d(l);
    out.put("rank", l.rank(), std::to_string(l.rank()));
    out.put("det", io::to_json(l.det()), l.det().get_str());
    auto [p, n] = l.sig();
    out.put("signature", json::array({p, n}), "(" + std::to_string(p) + ", " + std::to_string(n) + ")");
    out.put("factors", ints(d.factors()), str(d.factors()));
    out.put("order", io::to_json(d.order()), d.order().get_str());
    json qs = json::array();
    std::string text;
    for (std::size_t i = 0; i < d.length(); ++i) {
        std::vector<Integer> e(d.length());
        e[i] = 1;
        qs.push_back(d.q(e).get_str());
        text += (i ? ", " : "") + d.q(e).get_str();
    }
    out.put("generator_q", qs, text.empty() ? "none" : text);
    return out.finish();
}

int cmd_classify(Output& out, const EvenLattice& l, const std::string& vec)
{
    IntVector v = parse_lattice_vector(vec, l);
    DiscGroup d(l);
    out.put("square", io::to_json(l.square(v)), l.square(v).get_str());
    if (l.square(v) >= 0 || !is_root(v, l)) {
        out.check("vector is a negative root", false);
        return out.finish();
    }
    Divisibility dv = divisibility_and_star(v, l, d);
    out.put("divisibility", io::to_json(dv.div), dv.div.get_str());
    out.put("star", ints(dv.star), str(dv.star));
    try {
        out.put("tag", to_string(classify_negative_root(v, l, d)));
    } catch (const ClassificationError& e) {
        out.put("tag", "none");
        out.check(e.what(), false);
    }
    return out.finish();
}

int cmd_overlattices(Output& out, const EvenLattice& l)
{
    auto over = overlattices(l);
    json arr = json::array();
    std::string text = std::to_string(over.size());
    for (const auto& o : over) {
        const EvenLattice& ol = o.lattice.lattice;
        arr.push_back({{"glue", ints(o.glue)}, {"index", io::to_json(o.index)}, {"det", io::to_json(ol.det())},
                       {"basis", io::matrix_json(o.lattice.basis)}});
        text += "\n  glue " + str(o.glue) + " index " + o.index.get_str() + " det " + ol.det().get_str();
    }
    out.put("overlattices", arr, text);
    return out.finish();
}

int cmd_pell(Output& out, long bound)
{
    if (bound < 0)
        throw UsageError("--bound must be non-negative");
    json arr = json::array();
    std::string text = std::to_string(2 * bound + 1);
    NSRank2 ns(4);
    for (const auto& p : pell_square_two_classes(bound, default_ample())) {
        arr.push_back({{"n", p.n}, {"x", io::to_json(p.c.x)}, {"y", io::to_json(p.c.y)}});
        text += "\n  n=" + std::to_string(p.n) + " (" + p.c.x.get_str() + ", " + p.c.y.get_str() + ")";
        if (ns.square(p.c) != 2)
            out.check("class at n=" + std::to_string(p.n) + " has square 2", false);
    }
    out.put("classes", arr, text);
    return out.finish();
}

int cmd_hilb(Output& out)
{
    for (const CaseReport& r : {conic_consistency_check(), delta_case_check(), degree2_case_check(), quartic_case_check()}) {
        for (const auto& c : r.checks)
            out.check(r.name + ": " + c.name, c.pass);
        json vals = json::object();
        for (const auto& [k, v] : r.values) {
            vals[k] = v;
            out.lines.push_back(r.name + ": " + k + " = " + v);
        }
        out.doc["values"][r.name] = vals;
    }
    return out.finish();
}

int cmd_report(Output& out, const ReportOptions& opts)
{
    FullReport r = run_report(opts);
    if (out.as_json) {
        std::cout << r.to_json().dump(2) << "\n";
    } else {
        std::cout << r.text();
    }
    return r.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks for EPW sextics, their local models and the associated lattices"};
    app.require_subcommand(1);
    Common common;
    auto common_opts = [&](CLI::App* sub) {
        sub->add_option("--seed", common.seed, "random seed (echoed in the output)");
        sub->add_option("--format", common.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };

    FrameArgs fa;
    auto frame_opts = [&](CLI::App* sub) {
        common_opts(sub);
        sub->add_option("--frame", fa.frame, "LagrangianFrame JSON file (default: seeded instance)");
        sub->add_option("--point", fa.point, "comma-separated coordinates of v (default e1)");
    };

    auto* local = app.add_subcommand("local-sextic", "local equation det(q_A + q_v) at a point");
    frame_opts(local);
    auto* dcover = app.add_subcommand("double-cover", "Schur complement and double cover ideal at a point");
    frame_opts(dcover);
    auto* degen = app.add_subcommand("degeneracy", "dim of A meeting v ^ (second power of V)");
    frame_opts(degen);

    std::string poly_text, poly_file, plane_point = "0,0,1";
    auto* sing = app.add_subcommand("sextic-sing", "singularity of a plane sextic at a point");
    common_opts(sing);
    sing->add_option("--poly", poly_text, "sextic in x, y, z");
    sing->add_option("--poly-file", poly_file, "polynomial JSON file");
    sing->add_option("--point", plane_point, "comma-separated point (default 0,0,1)");

    std::string strata_frame, strata_sub, strata_point;
    std::size_t level = 1;
    auto* strata = app.add_subcommand("strata", "Theta containment, level and curve data for a 3-space");
    common_opts(strata);
    strata->add_option("--frame", strata_frame, "LagrangianFrame JSON file (default: seeded sampler)");
    strata->add_option("--subspace", strata_sub, "Subspace3 JSON file (default span(e1,e2,e3))");
    strata->add_option("--point", strata_point, "point of V for degeneracy and curve checks");
    strata->add_option("--level", level, "level for the seeded sampler")->check(CLI::Range(1, 3));

    std::size_t cases = 200;
    auto* vq = app.add_subcommand("varquad-check", "randomized checks of the variable quadric statements");
    common_opts(vq);
    vq->add_option("--cases", cases, "instances per suite");

    std::string lattice_file, lattice_name = "lambda", vector_text;
    auto lattice_opts = [&](CLI::App* sub) {
        common_opts(sub);
        sub->add_option("--lattice", lattice_file, "lattice JSON file");
        sub->add_option("--name", lattice_name, "built-in lattice: lambda, lambda_tilde, gamma, gamma_tilde, phi, phi_tilde, e8");
    };
    auto* disc = app.add_subcommand("disc-group", "discriminant group of a lattice");
    lattice_opts(disc);
    auto* classify = app.add_subcommand("classify-root", "orbit tag of a negative root");
    lattice_opts(classify);
    classify->add_option("--vector", vector_text, "named combination such as e1+e2, or integer coordinates")->required();
    auto* over = app.add_subcommand("overlattices", "even index-2 overlattices");
    lattice_opts(over);

    long bound = 10;
    auto* pell = app.add_subcommand("pell", "square-2 classes in the quartic case");
    common_opts(pell);
    pell->add_option("--bound", bound, "range |n| <= bound");

    auto* hilb = app.add_subcommand("hilb-check", "case checks on the Hilbert square lattice");
    common_opts(hilb);

    ReportOptions ropts;
    auto* rep = app.add_subcommand("report", "every example and acceptance criterion");
    common_opts(rep);
    rep->add_option("--lagrangians", ropts.lagrangians, "random graphs for the degree bound");
    rep->add_option("--cases", ropts.suite_cases, "instances per quadratic form suite");
    rep->add_option("--bound", ropts.pell_bound, "Pell range");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Output out;
    out.seed = common.seed;
    out.as_json = common.format == "json";
    try {
        if (*local)
            return cmd_local_sextic(out, fa);
        if (*dcover)
            return cmd_double_cover(out, fa);
        if (*degen)
            return cmd_degeneracy(out, fa);
        if (*sing) {
            if (poly_text.empty() == poly_file.empty())
                throw UsageError("give exactly one of --poly and --poly-file");
            return cmd_sextic_sing(out, poly_text, poly_file, plane_point);
        }
        if (*strata)
            return cmd_strata(out, strata_frame, strata_sub, strata_point, level);
        if (*vq)
            return cmd_varquad(out, cases);
        if (*disc)
            return cmd_disc_group(out, pick_lattice(lattice_file, lattice_name));
        if (*classify)
            return cmd_classify(out, pick_lattice(lattice_file, lattice_name), vector_text);
        if (*over)
            return cmd_overlattices(out, pick_lattice(lattice_file, lattice_name));
        if (*pell)
            return cmd_pell(out, bound);
        if (*hilb)
            return cmd_hilb(out);
        if (*rep) {
            ropts.seed = common.seed;
            return cmd_report(out, ropts);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
