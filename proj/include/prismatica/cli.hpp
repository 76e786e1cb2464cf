#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "prismatica/classifying.hpp"
#include "prismatica/fixtures.hpp"
#include "prismatica/homology.hpp"
#include "prismatica/star.hpp"

namespace prismatica {

using nlohmann::json;

// PRISMATICA_THREADS caps worker threads; subcommands parallelize only
// through this helper, with results assembled in index order.
inline int thread_cap()
{
    int hw = (int)std::thread::hardware_concurrency();
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("PRISMATICA_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return std::min(v, hw);
    }
    return hw;
}

template <class F>
inline void parallel_chunks(long long n, F&& fn) // fn(chunk_index, lo, hi)
{
    int workers = (int)std::min<long long>(thread_cap(), std::max<long long>(n, 1));
    if (workers <= 1 || n < 2) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    long long per = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        long long lo = w * per, hi = std::min<long long>(n, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([&fn, w, lo, hi]() { fn(w, lo, hi); });
    }
    for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// JSON encodings (External Interfaces)
// ---------------------------------------------------------------------------

inline json nf_to_json(const NormalForm& x)
{
    return json{{"degens", x.degens}, {"gen", {x.gen.dim, x.gen.index}}};
}

inline json complex_to_json(const OrderedComplex& k)
{
    return json{{"vertices", k.vertex_labels}, {"simplices", k.simplices}};
}

inline OrderedComplex complex_from_json(const json& j)
{
    OrderedComplex k;
    k.vertex_labels = j.at("vertices").get<std::vector<std::string>>();
    k.simplices = j.at("simplices").get<std::vector<std::vector<int>>>();
    return k;
}

inline json set_to_json(const SimplicialSet& s)
{
    json gens = json::object(), faces = json::object();
    for (int d = 0; d <= s.max_generator_dim(); ++d) {
        json labels = json::array(), dim_faces = json::array();
        for (int i = 0; i < s.generator_count(d); ++i) {
            const Generator& g = s.generator(GeneratorId{d, i});
            labels.push_back(g.label);
            json fl = json::array();
            for (const NormalForm& f : g.faces) fl.push_back(nf_to_json(f));
            dim_faces.push_back(fl);
        }
        gens[std::to_string(d)] = labels;
        faces[std::to_string(d)] = dim_faces;
    }
    return json{{"D", s.truncation()}, {"generators", gens}, {"faces", faces}};
}

inline json cell_to_json(const PrismCell& c)
{
    json payload = c.base ? json::array({nf_to_json(c.payload), nf_to_json(*c.base)})
                          : nf_to_json(c.payload);
    return json{{"construction", construction_name(c.cons)},
                {"p", c.deg.p},
                {"q", c.deg.q},
                {"payload", payload}};
}

inline json homology_to_json(const std::vector<HomologyGroup>& groups)
{
    json rows = json::array();
    for (int n = 0; n < (int)groups.size(); ++n) {
        json torsion = json::array();
        for (const BigInt& t : groups[n].torsion) torsion.push_back(t.str());
        rows.push_back(json{{"degree", n},
                            {"betti", groups[n].betti},
                            {"torsion", torsion},
                            {"reliable", groups[n].reliable}});
    }
    return rows;
}

inline json gauge_report_to_json(const GaugeReport& rep)
{
    json v = json::array();
    for (const auto& viol : rep.violations)
        v.push_back(json{{"where", viol.where}, {"discrepancy", viol.discrepancy}});
    return json{{"ok", rep.ok()},
                {"checked", rep.checked},
                {"max_discrepancy", rep.max_discrepancy},
                {"violations", v}};
}

// ---------------------------------------------------------------------------
// Shared option plumbing
// ---------------------------------------------------------------------------

struct CliContext {
    std::string fixture;
    std::string input_path;
    int truncation = -1;
    uint64_t seed = 0;
    std::string output_path;

    SimplicialSet load_set(int min_trunc = 0) const
    {
        OrderedComplex k;
        if (!input_path.empty()) {
            std::ifstream in(input_path);
            if (!in) throw Error(ErrorKind::BadInput, "cannot open " + input_path);
            json j;
            in >> j;
            k = complex_from_json(j);
        } else if (!fixture.empty()) {
            k = fixture_complex(fixture);
        } else {
            throw Error(ErrorKind::BadInput, "one of --fixture or --input is required");
        }
        SimplicialSet s = from_complex(k);
        int want = std::max({s.truncation(), truncation, min_trunc});
        return want > s.truncation() ? s.with_truncation(want) : s;
    }

    OrderedComplex load_complex() const
    {
        if (!input_path.empty()) {
            std::ifstream in(input_path);
            if (!in) throw Error(ErrorKind::BadInput, "cannot open " + input_path);
            json j;
            in >> j;
            return complex_from_json(j);
        }
        if (!fixture.empty()) return fixture_complex(fixture);
        throw Error(ErrorKind::BadInput, "one of --fixture or --input is required");
    }

    void emit(const json& j, std::ostream& fallback) const
    {
        std::string text = j.dump(2);
        text.push_back('\n');
        if (output_path.empty()) {
            fallback << text;
        } else {
            std::ofstream out(output_path, std::ios::binary);
            out << text;
        }
    }
};

inline std::string load_gauge_text(const std::string& spec)
{
    if (spec.rfind("builtin:", 0) == 0) return gauge_fixture_json(spec.substr(8));
    std::ifstream in(spec);
    if (!in) throw Error(ErrorKind::BadInput, "cannot open gauge config " + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline MultiDegree parse_degree(const std::string& text)
{
    // "p,q0,q1,...,qp"
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(std::stoi(tok));
    if (parts.size() < 2 || (int)parts.size() != parts[0] + 2)
        throw Error(ErrorKind::BadInput, "degree must be p,q0,...,qp");
    return MultiDegree{std::vector<int>(parts.begin() + 1, parts.end())};
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

inline int cmd_validate(const CliContext& ctx, std::ostream& out)
{
    SimplicialSet s = ctx.load_set();
    IdentityReport rep = verify_identities(s);
    json viols = json::array();
    for (const auto& v : rep.violations)
        viols.push_back(json{{"relation", v.relation},
                             {"element", nf_to_json(v.x)},
                             {"i", v.i},
                             {"j", v.j}});
    json j{{"schema", 1},
           {"command", "validate"},
           {"checked", rep.checked},
           {"ok", rep.ok()},
           {"violations", viols},
           {"set", set_to_json(s)}};
    ctx.emit(j, out);
    return rep.ok() ? 0 : 1;
}

inline int cmd_prism_enumerate(const CliContext& ctx, const std::string& construction,
                               const std::string& degree, std::ostream& out)
{
    MultiDegree d = parse_degree(degree);
    Construction cons = construction == "P" ? Construction::P : Construction::Pbar;
    if (construction != "P" && construction != "Pbar")
        throw Error(ErrorKind::BadInput, "construction must be P or Pbar");
    SimplicialSet s = ctx.load_set(d.payload_dim(cons));
    json cells = json::array();
    long long count = 0;
    for_each_prism_cell(s, cons, d, [&](const PrismCell& c) {
        ++count;
        cells.push_back(cell_to_json(c));
    });
    json j{{"schema", 1},
           {"command", "prism enumerate"},
           {"construction", construction},
           {"p", d.p},
           {"q", d.q},
           {"count", count},
           {"cells", cells}};
    ctx.emit(j, out);
    return 0;
}

inline int cmd_star(const CliContext& ctx, int max_p, int max_q, std::ostream& out)
{
    OrderedComplex k = ctx.load_complex();
    OrderedComplex stk = star_complex(k);

    std::vector<MultiDegree> degs;
    for (int p = 0; p <= max_p; ++p) {
        std::vector<int> q(p + 1, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == p + 1) {
                degs.push_back(MultiDegree{q});
                return;
            }
            for (int v = 0; v <= max_q; ++v) {
                q[i] = v;
                rec(i + 1);
            }
        };
        rec(0);
    }

    int need = 0;
    for (const MultiDegree& d : degs)
        need = std::max(need, d.payload_dim(Construction::Pbar));
    SimplicialSet s = from_complex(k);
    if (need > s.truncation()) s = s.with_truncation(std::max(need, ctx.truncation));

    json tables = json::array();
    bool all_ok = true;
    for (const MultiDegree& d : degs) {
        json cells = json::array(), preimages = json::array();
        for_each_prism_cell(s, Construction::Pbar, d, [&](const PrismCell& c) {
            StarCell sc = pbar(s, c);
            bool ok = star_cell_valid(s, sc) && pbar_inverse(s, sc) == c;
            all_ok = all_ok && ok;
            cells.push_back(json{{"sigma", nf_to_json(sc.sigma)},
                                 {"tau", nf_to_json(sc.tau)},
                                 {"sigma_bar", nf_to_json(sc.sigma_bar)},
                                 {"round_trip", ok}});
            preimages.push_back(nf_to_json(c.payload));
        });
        tables.push_back(json{{"deg", json{{"p", d.p}, {"q", d.q}}},
                              {"cells", cells},
                              {"preimages", preimages}});
    }
    json j{{"schema", 1},
           {"command", "star"},
           {"ok", all_ok},
           {"star_complex", complex_to_json(stk)},
           {"tables", tables}};
    ctx.emit(j, out);
    return all_ok ? 0 : 1;
}

inline int cmd_homology(const CliContext& ctx, const std::string& construction, int max_degree,
                        std::ostream& out)
{
    json j{{"schema", 1}, {"command", "homology"}, {"construction", construction}};
    std::vector<HomologyGroup> groups;
    if (construction == "simplicial") {
        SimplicialSet s = ctx.load_set();
        groups = homology(simplicial_chain_complex(s));
    } else if (construction == "P" || construction == "Pbar") {
        Construction cons = construction == "P" ? Construction::P : Construction::Pbar;
        int need = cons == Construction::P ? max_degree : 2 * max_degree + 1;
        SimplicialSet s = ctx.load_set(need);
        groups = homology(prismatic_total_complex(s, cons, max_degree));
    } else if (construction == "Pf") {
        // collapse map to the point; --input may supply an explicit map
        if (!ctx.input_path.empty()) {
            std::ifstream in(ctx.input_path);
            json spec;
            in >> spec;
            if (spec.contains("vertex_map")) {
                OrderedComplex src = complex_from_json(spec.at("source"));
                OrderedComplex dst = complex_from_json(spec.at("target"));
                SimplicialSet ss = from_complex(src).with_truncation(
                    std::max(from_complex(src).truncation(), max_degree));
                SimplicialSet ds = from_complex(dst).with_truncation(
                    std::max(from_complex(dst).truncation(), max_degree));
                SimplicialMap f = SimplicialMap::from_vertex_map(
                    ss, ds, spec.at("vertex_map").get<std::vector<int>>());
                groups = homology(pf_total_complex(f, max_degree));
                j["groups"] = homology_to_json(groups);
                ctx.emit(j, out);
                return 0;
            }
        }
        SimplicialSet s = ctx.load_set(max_degree);
        OrderedComplex pt = fixture_complex("point");
        SimplicialSet ps = from_complex(pt).with_truncation(std::max(1, max_degree));
        std::vector<int> vmap(s.vertex_labels().size(), 0);
        SimplicialMap f = SimplicialMap::from_vertex_map(s, ps, vmap);
        groups = homology(pf_total_complex(f, max_degree));
    } else {
        throw Error(ErrorKind::BadInput, "construction must be simplicial, P, Pbar or Pf");
    }
    j["groups"] = homology_to_json(groups);
    ctx.emit(j, out);
    return 0;
}

inline int cmd_gauge_check(const CliContext& ctx, const std::string& gauge_spec, int samples,
                           std::ostream& out)
{
    SimplicialSet s = ctx.load_set();
    TransitionSet t = transition_set_from_json(s, json::parse(load_gauge_text(gauge_spec)));
    GaugeReport compat = check_compatibility(t, samples, ctx.seed);
    GaugeReport cocycle = check_cocycle(t, samples, ctx.seed);
    GaugeReport transport = check_ps_boundaries(t, samples, ctx.seed);
    bool pass = compat.ok() && cocycle.ok() && transport.ok();
    json j{{"schema", 1},
           {"command", "gauge check"},
           {"samples", samples},
           {"seed", ctx.seed},
           {"compatibility", gauge_report_to_json(compat)},
           {"cocycle", gauge_report_to_json(cocycle)},
           {"transport_boundaries", gauge_report_to_json(transport)},
           {"pass", pass}};
    ctx.emit(j, out);
    return pass ? 0 : 1;
}

inline int cmd_gauge_transport(const CliContext& ctx, const std::string& gauge_spec,
                               const std::string& simplex, const std::string& cube,
                               std::ostream& out)
{
    SimplicialSet s = ctx.load_set();
    TransitionSet t = transition_set_from_json(s, json::parse(load_gauge_text(gauge_spec)));

    std::vector<int> verts;
    {
        std::stringstream ss(simplex);
        std::string tok;
        while (std::getline(ss, tok, ',')) verts.push_back(std::stoi(tok));
    }
    auto id = s.generator_by_vertices(verts);
    if (!id) throw Error(ErrorKind::BadInput, "simplex not found: " + simplex);

    std::vector<double> cube_pt;
    if (!cube.empty()) {
        std::stringstream ss(cube);
        std::string tok;
        while (std::getline(ss, tok, ',')) cube_pt.push_back(std::stod(tok));
    }
    GroupElem v = transport_V(t, NormalForm{*id}, cube_pt);
    PlPath path = pl_path((int)verts.size() - 1, cube_pt);
    json pts = json::array();
    for (const BaryPoint& p : path.points) pts.push_back(p.c);
    json j{{"schema", 1},
           {"command", "gauge transport"},
           {"simplex", verts},
           {"cube", cube_pt},
           {"path_points", pts},
           {"t", path.t.c},
           {"value", t.group.dump(v)}};
    ctx.emit(j, out);
    return 0;
}

inline int cmd_classify(const CliContext& ctx, const std::string& gauge_spec,
                        const std::string& degree, int samples, std::ostream& out)
{
    MultiDegree d = parse_degree(degree);
    SimplicialSet s = ctx.load_set(d.payload_dim(Construction::Pbar));
    TransitionSet t = transition_set_from_json(s, json::parse(load_gauge_text(gauge_spec)));

    SplitMix64 rng(ctx.seed);
    json cells = json::array();
    bool all_ok = true;
    for_each_prism_cell(s, Construction::Pbar, d, [&](const PrismCell& c) {
        json evals = json::array();
        for (int k = 0; k < samples; ++k) {
            InteriorPoint tp = to_interior(BaryPoint{rng.next_barycentric(d.p)});
            std::vector<BaryPoint> sp;
            for (int b = 0; b <= d.p; ++b) sp.push_back(BaryPoint{rng.next_barycentric(d.q[b])});
            ClassifyingTuple tup = classify_cell(t, c, tp, sp);
            json elems = json::array();
            for (const GroupElem& e : tup) elems.push_back(t.group.dump(e));
            evals.push_back(json{{"t", tp.t}, {"a", elems}});
        }
        json faces = json::array();
        if (d.p >= 1) {
            for (int i = 0; i <= d.p; ++i) {
                MCompatReport rep = check_m_compatibility(t, c, i, std::max(1, samples / 5),
                                                          ctx.seed);
                all_ok = all_ok && rep.ok();
                faces.push_back(json{{"face", i},
                                     {"ok", rep.ok()},
                                     {"max_discrepancy", rep.max_discrepancy},
                                     {"right_translation", rep.right_translation_ok}});
            }
        }
        cells.push_back(
            json{{"payload", nf_to_json(c.payload)}, {"evaluations", evals}, {"faces", faces}});
    });
    json j{{"schema", 1},
           {"command", "classify"},
           {"deg", json{{"p", d.p}, {"q", d.q}}},
           {"samples", samples},
           {"seed", ctx.seed},
           {"ok", all_ok},
           {"cells", cells}};
    ctx.emit(j, out);
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"prismatic sets, star complexes, homology and lattice gauge fields"};
    app.require_subcommand(1);

    CliContext ctx;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--fixture", ctx.fixture, "built-in fixture name");
        sub->add_option("--input", ctx.input_path, "complex JSON file");
        sub->add_option("--trunc", ctx.truncation, "truncation override");
        sub->add_option("--output", ctx.output_path, "write the report here");
        sub->add_option("--seed", ctx.seed, "PRNG seed (splitmix64)");
    };

    auto* v = app.add_subcommand("validate", "check the simplicial identities");
    add_common(v);

    auto* prism = app.add_subcommand("prism", "prismatic constructions");
    auto* pe = prism->add_subcommand("enumerate", "list the cells of a multidegree");
    add_common(pe);
    std::string construction = "P", degree = "0,0";
    pe->add_option("--construction", construction, "P or Pbar");
    pe->add_option("--deg", degree, "multidegree p,q0,...,qp");

    auto* st = app.add_subcommand("star", "star complex and pbar tables");
    add_common(st);
    int max_p = 1, max_q = 1;
    st->add_option("--max-p", max_p, "largest base degree");
    st->add_option("--max-q", max_q, "largest fiber degree");

    auto* h = app.add_subcommand("homology", "integer homology");
    add_common(h);
    std::string hcons = "simplicial";
    int max_degree = 3;
    h->add_option("--construction", hcons, "simplicial, P, Pbar or Pf");
    h->add_option("--max-degree", max_degree, "top total degree");

    auto* g = app.add_subcommand("gauge", "transition function checks");
    auto* gc = g->add_subcommand("check", "compatibility, cocycle and transport laws");
    add_common(gc);
    std::string gauge_spec;
    int samples = 25;
    gc->add_option("--gauge", gauge_spec, "gauge config file or builtin:<name>")->required();
    gc->add_option("--samples", samples, "random sample points per check");
    auto* gt = g->add_subcommand("transport", "parallel transport along the PL path");
    add_common(gt);
    std::string gt_gauge, gt_simplex, gt_cube;
    gt->add_option("--gauge", gt_gauge, "gauge config file or builtin:<name>")->required();
    gt->add_option("--simplex", gt_simplex, "vertex tuple, comma separated")->required();
    gt->add_option("--cube", gt_cube, "cube coordinates, comma separated");

    auto* cl = app.add_subcommand("classify", "evaluate the classifying map");
    add_common(cl);
    std::string cl_gauge, cl_degree = "1,0,0";
    int cl_samples = 5;
    cl->add_option("--gauge", cl_gauge, "gauge config file or builtin:<name>")->required();
    cl->add_option("--deg", cl_degree, "multidegree p,q0,...,qp");
    cl->add_option("--samples", cl_samples, "sample points per cell");

    std::vector<const char*> argv;
    argv.push_back("prismatica");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError& e) {
        std::stringstream usage;
        int code = app.exit(e, usage, usage);
        (code == 0 ? out : err) << usage.str();
        return code;
    }

    try {
        if (v->parsed()) return cmd_validate(ctx, out);
        if (pe->parsed()) return cmd_prism_enumerate(ctx, construction, degree, out);
        if (st->parsed()) return cmd_star(ctx, max_p, max_q, out);
        if (h->parsed()) return cmd_homology(ctx, hcons, max_degree, out);
        if (gc->parsed()) return cmd_gauge_check(ctx, gauge_spec, samples, out);
        if (gt->parsed()) return cmd_gauge_transport(ctx, gt_gauge, gt_simplex, gt_cube, out);
        if (cl->parsed()) return cmd_classify(ctx, cl_gauge, cl_degree, cl_samples, out);
        err << "no subcommand\n";
        return 2;
    } catch (const Error& e) {
        err << "error (" << error_kind_name(e.kind) << "): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace prismatica
