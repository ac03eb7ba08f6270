#include "hkq/report.hpp"

#include <sstream>

#include "hkq/arrangement.hpp"
#include "hkq/errors.hpp"
#include "hkq/morse.hpp"
#include "hkq/ringcalc.hpp"

namespace hkq::report {

namespace {

Rat parse_entry(const Json& e, const std::string& where)
{
    if (e.is_number_integer())
        return Rat(e.get<long long>());
    if (e.is_string())
        return parse_rat(e.get<std::string>());
    throw InvalidInput(where + ": expected an integer or a \"p/q\" string");
}

Json big_json(const BigInt& v)
{
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return Json(v.convert_to<long long>());
    return Json(v.str());
}

Json poly_json(const PoincarePoly& p)
{
    Json out = Json::array();
    for (const auto& c : p.coeffs())
        out.push_back(big_json(c));
    return out;
}

Json rat_vec_json(const RatVec& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

Json counts_json(const std::vector<std::size_t>& v)
{
    Json out = Json::array();
    for (auto x : v)
        out.push_back(x);
    return out;
}

Json witness_json(const GenericityResult& g)
{
    Json out;
    out["generic"] = g.generic;
    if (g.witness)
    {
        out["flat"] = index_json(g.witness->flat);
        if (g.witness->index)
            out["index"] = *g.witness->index + 1;
        if (g.witness->other_flat)
            out["other_flat"] = index_json(*g.witness->other_flat);
        out["reason"] = g.witness->reason;
    }
    return out;
}

Json flats_json(const std::vector<Flat>& flats)
{
    Json out = Json::array();
    for (const auto& f : flats)
        out.push_back({{"J", index_json(f.J)}, {"rank", f.rank}, {"codim", f.codim}, {"proper", f.is_proper}});
    return out;
}

Json presentation_json(const RingPresentation& p, const HilbertTable& t)
{
    Json vars = Json::array();
    for (std::size_t k = 0; k < p.num_vars; ++k)
        vars.push_back(p.equivariant && k + 1 == p.num_vars ? "u0" : "x" + std::to_string(k + 1));
    Json gens = Json::array();
    for (const auto& g : p.generators)
    {
        Json e;
        if (p.equivariant)
        {
            e["plus"] = index_json(g.plain);
            e["minus"] = index_json(g.shifted);
        }
        else
            e["factors"] = index_json(g.plain);
        e["text"] = generator_to_string(p, g);
        gens.push_back(std::move(e));
    }
    return {{"variables", vars}, {"generators", gens}, {"dims", counts_json(t.dims)}};
}

Json census_json(const FaceCensus& c)
{
    return {{"d", counts_json(c.d)}, {"poincare", poly_json(poincare_from_census(c))}};
}

TorusSetup resolve_parameters(const TorusSetup& s, const AnalyzeOptions& opts)
{
    return opts.sample_generic ? with_generic_parameters(s, opts.seed) : s;
}

}  // namespace

Json index_json(const IndexSet& J)
{
    Json out = Json::array();
    for (auto j : J)
        out.push_back(j + 1);
    return out;
}

TorusSetup parse_setup(const Json& j)
{
    if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array())
        throw InvalidInput("setup must be an object with a \"weights\" array of rows");
    const Json& w = j["weights"];
    const std::size_t n = w.size();
    const std::size_t d = n == 0 ? 0 : (w[0].is_array() ? w[0].size() : 0);
    RatMatrix B(n, d);
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!w[i].is_array() || w[i].size() != d)
            throw DimensionMismatch("weight rows must all have length " + std::to_string(d));
        for (std::size_t k = 0; k < d; ++k)
            B(i, k) = parse_entry(w[i][k], "weights[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }

    RatVec alpha(d);
    if (j.contains("alpha"))
    {
        const Json& a = j["alpha"];
        if (!a.is_array() || a.size() != d)
            throw DimensionMismatch("alpha must have " + std::to_string(d) + " entries");
        for (std::size_t k = 0; k < d; ++k)
            alpha[k] = parse_entry(a[k], "alpha[" + std::to_string(k) + "]");
    }
    CRatVec beta(d);
    if (j.contains("beta"))
    {
        const Json& b = j["beta"];
        if (!b.is_array() || b.size() != d)
            throw DimensionMismatch("beta must have " + std::to_string(d) + " entries");
        for (std::size_t k = 0; k < d; ++k)
        {
            const std::string where = "beta[" + std::to_string(k) + "]";
            if (b[k].is_array())
            {
                if (b[k].size() != 2)
                    throw InvalidInput(where + ": expected [re, im]");
                beta[k] = CRat{parse_entry(b[k][0], where), parse_entry(b[k][1], where)};
            }
            else
                beta[k] = CRat{parse_entry(b[k], where), Rat(0)};
        }
    }
    return TorusSetup::create(std::move(B), std::move(alpha), std::move(beta));
}

Json setup_json(const TorusSetup& s)
{
    Json w = Json::array();
    for (std::size_t i = 0; i < s.n(); ++i)
    {
        Json row = Json::array();
        for (std::size_t k = 0; k < s.d(); ++k)
            row.push_back(big_json(num(s.weights()(i, k))));
        w.push_back(std::move(row));
    }
    Json beta = Json::array();
    for (const auto& b : s.beta())
        beta.push_back({to_string(b.re), to_string(b.im)});
    return {{"n", s.n()}, {"d", s.d()}, {"weights", w}, {"alpha", rat_vec_json(s.alpha())}, {"beta", beta}};
}

Outcome analyze(const TorusSetup& input, const AnalyzeOptions& opts)
{
    Outcome out;
    const TorusSetup s = resolve_parameters(input, opts);
    Json& r = out.report;
    r["setup"] = setup_json(s);
    r["sampled_parameters"] = opts.sample_generic;

    const auto flats = enumerate_flats(s, opts.max_n);
    const auto sets = flat_sets(flats);
    const auto gb = is_generic_beta(s, sets);
    const auto ga = is_generic_alpha(s, sets);
    r["genericity"] = {{"beta", witness_json(gb)}, {"alpha", witness_json(ga)}};
    r["flats"] = flats_json(flats);
    if (!gb.generic || !ga.generic)
    {
        out.exit_code = exit_non_generic;
        out.message = "non-generic parameters: "
                      + (!gb.generic ? gb.witness->reason : ga.witness->reason)
                      + " (rerun with --sample-generic to draw generic ones)";
        return out;
    }

    const auto components = critical_components(s, opts.seed, opts.max_n);
    const PoincarePoly p_morse = poincare_morse(s, opts.max_n);
    Json comps = Json::array();
    for (const auto& c : components)
        comps.push_back({{"J", index_json(c.flat.J)},
                         {"index", c.morse_index},
                         {"critical_value", to_string(c.critical_value)},
                         {"euler", index_json(c.euler_exponents)}});
    r["morse"] = {{"components", comps}, {"poincare", poly_json(p_morse)}};

    const FaceCensus cen = face_census(build_arrangement(s));
    const PoincarePoly p_census = poincare_from_census(cen);
    r["census"] = census_json(cen);

    const auto kp = kirwan_presentation(s, opts.max_n);
    const auto kt = hilbert_series(kp, default_max_deg(s));
    const PoincarePoly p_hilbert = poincare_from_hilbert(kt);
    const std::size_t m = s.n() - s.d();
    const auto sp = s1_presentation(s, opts.max_n);
    const auto st = hilbert_series(sp, m + 3);
    const auto expected = series_over_one_minus_q(p_hilbert, m + 4);
    bool s1_ok = st.dims.size() == expected.size();
    for (std::size_t k = 0; s1_ok && k < expected.size(); ++k)
        s1_ok = BigInt(st.dims[k]) == expected[k];

    Json ordinary = presentation_json(kp, kt);
    ordinary["poincare"] = poly_json(p_hilbert);
    Json s1 = presentation_json(sp, st);
    Json exp = Json::array();
    for (const auto& e : expected)
        exp.push_back(big_json(e));
    s1["expected"] = exp;
    r["ring"] = {{"ordinary", ordinary}, {"s1", s1}};

    Json flags;
    flags["morse_census"] = p_morse == p_census;
    flags["morse_hilbert"] = p_morse == p_hilbert;
    flags["census_hilbert"] = p_census == p_hilbert;
    flags["hilbert_vanishes"] = kt.dims.back() == 0;
    flags["s1_series"] = s1_ok;
    bool all = true;
    for (const auto& [k, v] : flags.items())
        all = all && v.get<bool>();
    flags["all"] = all;
    r["agreement"] = flags;
    r["poincare"] = {{"morse", poly_json(p_morse)}, {"census", poly_json(p_census)}, {"hilbert", poly_json(p_hilbert)}};
    if (!all)
    {
        out.exit_code = exit_disagreement;
        out.message = "CROSS-CHECK DISAGREEMENT: morse " + p_morse.to_string() + ", census " + p_census.to_string()
                      + ", hilbert " + p_hilbert.to_string();
    }
    return out;
}

Outcome census(const TorusSetup& input, const AnalyzeOptions& opts)
{
    Outcome out;
    const TorusSetup s = resolve_parameters(input, opts);
    const auto ga = is_generic_alpha(s, flat_sets(enumerate_flats(s, opts.max_n)));
    if (!ga.generic)
    {
        out.report = {{"genericity", witness_json(ga)}};
        out.exit_code = exit_non_generic;
        out.message = "non-generic alpha: " + ga.witness->reason;
        return out;
    }
    out.report = census_json(face_census(build_arrangement(s)));
    return out;
}

Outcome modify(const TorusSetup& s, const RatVec& column, bool check_recurrence, const AnalyzeOptions& opts)
{
    if (column.size() != s.n())
        throw DimensionMismatch("column must have N = " + std::to_string(s.n()) + " entries");
    Outcome out;
    const TorusSetup so = with_generic_parameters(s, opts.seed);
    const TorusSetup st = hkq::modify(s, column, opts.seed);
    const TorusSetup sh = quotient_circle(s, column, opts.seed);

    const PoincarePoly po = poincare_morse(so, opts.max_n);
    const PoincarePoly pt = poincare_morse(st, opts.max_n + 1);
    const PoincarePoly ph = poincare_morse(sh, opts.max_n);
    const PoincarePoly rhs = po + PoincarePoly::monomial(1) * ph;

    const FaceCensus co = face_census(build_arrangement(so));
    const FaceCensus ct = face_census(build_arrangement(st));
    const FaceCensus ch = face_census(build_arrangement(sh));
    bool census_ok = ct.d.size() == co.d.size();
    for (std::size_t k = 0; census_ok && k < ct.d.size(); ++k)
    {
        std::size_t expect = co.d[k];
        if (k < ch.d.size())
            expect += ch.d[k];
        if (k >= 1 && k - 1 < ch.d.size())
            expect += ch.d[k - 1];
        census_ok = ct.d[k] == expect;
    }

    const auto table = trichotomy(st.weights(), s.weights(), sh.weights(), opts.max_n);
    Json rows = Json::array();
    for (const auto& row : table.rows)
        rows.push_back({{"J", index_json(row.flat)},
                        {"case", static_cast<int>(row.which)},
                        {"critical_in_modification", row.modified_J},
                        {"extended_critical_in_modification", row.modified_J_plus},
                        {"critical_in_original", row.original_J}});

    Json& r = out.report;
    r["column"] = rat_vec_json(column);
    r["original"] = {{"setup", setup_json(so)}, {"poincare", poly_json(po)}, {"census", census_json(co)}};
    r["modification"] = {{"setup", setup_json(st)}, {"poincare", poly_json(pt)}, {"census", census_json(ct)}};
    r["quotient"] = {{"setup", setup_json(sh)}, {"poincare", poly_json(ph)}, {"census", census_json(ch)}};
    r["recurrence"] = {{"holds", pt == rhs}, {"lhs", poly_json(pt)}, {"rhs", poly_json(rhs)}};
    r["census_recurrence"] = {{"holds", census_ok}};
    r["trichotomy"] = {{"rows", rows},
                       {"case1", table.count1},
                       {"case2", table.count2},
                       {"case3", table.count3},
                       {"violations", 0}};
    if (check_recurrence && (pt != rhs || !census_ok))
    {
        out.exit_code = exit_disagreement;
        out.message = "RECURRENCE VIOLATION: P(modification) = " + pt.to_string() + " but P + q P(quotient) = "
                      + rhs.to_string();
    }
    return out;
}

Outcome run_flow(const TorusSetup& input, const FlowCommandOptions& fopts, const AnalyzeOptions& opts,
                 std::vector<flow::FlowRecord>* records)
{
    Outcome out;
    const TorusSetup s = resolve_parameters(input, opts);
    const auto sets = flat_sets(enumerate_flats(s, opts.max_n));
    GenericityResult g;
    if (fopts.which == flow::Function::C2 || fopts.which == flow::Function::HK2)
        g = is_generic_beta(s, sets);
    if (g.generic && fopts.which != flow::Function::C2)
        g = is_generic_alpha(s, sets);
    if (!g.generic)
    {
        out.report = {{"genericity", witness_json(g)}};
        out.exit_code = exit_non_generic;
        out.message = "non-generic parameters: " + g.witness->reason;
        return out;
    }

    auto recs = flow::run_ensemble(s, fopts.which, fopts.trials, opts.seed, fopts.ensemble);
    Json arr = Json::array();
    for (const auto& rec : recs)
    {
        Json e;
        e["seed"] = rec.seed;
        e["status"] = flow::status_name(rec.status);
        e["f_limit"] = rec.f_limit;
        e["J"] = rec.flat ? index_json(*rec.flat) : Json(nullptr);
        if (rec.loj)
        {
            e["k_hat"] = rec.loj->k_hat;
            e["fitted_exponent"] = rec.loj->fitted_exponent;
            e["arclength"] = rec.loj->tail_arclength;
            e["bound"] = rec.loj->bound;
        }
        else
        {
            for (const char* key : {"k_hat", "fitted_exponent", "arclength", "bound"})
                e[key] = nullptr;
            if (!rec.loj_error.empty())
                e["note"] = rec.loj_error;
        }
        arr.push_back(std::move(e));
    }
    out.report = std::move(arr);
    if (records)
        *records = std::move(recs);
    return out;
}

std::string flow_csv(const std::vector<flow::FlowRecord>& records)
{
    std::ostringstream os;
    os.precision(17);
    os << "seed,t,f,grad_norm\n";
    for (const auto& rec : records)
        for (const auto& smp : rec.trajectory.samples)
            os << rec.seed << ',' << smp.t << ',' << smp.f << ',' << smp.grad_norm << '\n';
    return os.str();
}

namespace {

flow::CMat parse_complex_matrix(const Json& m)
{
    if (!m.is_object() || !m.contains("re"))
        throw InvalidInput("each matrix must be an object {\"re\": [[...]], \"im\": [[...]]}");
    auto part = [](const Json& rows, std::size_t& r, std::size_t& c) {
        if (!rows.is_array() || rows.empty() || !rows[0].is_array())
            throw InvalidInput("matrix parts must be non-empty arrays of rows");
        r = rows.size();
        c = rows[0].size();
        flow::RMat out(r, c);
        for (std::size_t i = 0; i < r; ++i)
        {
            if (!rows[i].is_array() || rows[i].size() != c)
                throw DimensionMismatch("ragged matrix rows");
            for (std::size_t k = 0; k < c; ++k)
            {
                if (!rows[i][k].is_number())
                    throw InvalidInput("matrix entries must be numbers");
                out(i, k) = rows[i][k].get<double>();
            }
        }
        return out;
    };
    std::size_t r = 0, c = 0;
    const flow::RMat re = part(m["re"], r, c);
    flow::RMat im = flow::RMat::Zero(r, c);
    if (m.contains("im"))
    {
        std::size_t r2 = 0, c2 = 0;
        im = part(m["im"], r2, c2);
        if (r2 != r || c2 != c)
            throw DimensionMismatch("re and im parts differ in shape");
    }
    return re.cast<flow::cd>() + flow::cd(0, 1) * im.cast<flow::cd>();
}

}  // namespace

RepInput parse_rep(const Json& j)
{
    if (j.is_object() && j.contains("weights"))
    {
        const TorusSetup s = parse_setup(j);
        return {flow::torus_rep(s), flow::torus_params(s).alpha};
    }
    const Json* list = &j;
    if (j.is_object())
    {
        if (!j.contains("basis"))
            throw InvalidInput("representation object needs a \"basis\" list");
        list = &j["basis"];
    }
    if (!list->is_array() || list->empty())
        throw InvalidInput("representation basis must be a non-empty list of matrices");
    std::vector<flow::CMat> basis;
    for (const auto& m : *list)
        basis.push_back(parse_complex_matrix(m));
    RepInput in{flow::GroupRep::from_basis(std::move(basis)), flow::RVec::Zero(static_cast<Eigen::Index>(list->size()))};
    if (j.is_object() && j.contains("alpha"))
    {
        const Json& a = j["alpha"];
        if (!a.is_array() || a.size() != list->size())
            throw DimensionMismatch("alpha must have one entry per basis element");
        for (std::size_t k = 0; k < a.size(); ++k)
            in.alpha(static_cast<Eigen::Index>(k)) = a[k].get<double>();
    }
    return in;
}

Outcome crossterm(const RepInput& in, std::size_t samples, std::uint64_t seed, double radius)
{
    Outcome out;
    const auto st = flow::cross_term_stats(in.rep, in.alpha, samples, seed, radius);
    Json r;
    r["abelian"] = in.rep.abelian;
    r["dim"] = in.rep.n();
    r["rank"] = in.rep.k();
    r["samples"] = st.samples;
    r["seed"] = seed;
    r["radius"] = radius;
    r["max_pair_relative"] = {st.max_pair_relative[0], st.max_pair_relative[1], st.max_pair_relative[2]};
    r["max_pair_absolute"] = {st.max_pair_absolute[0], st.max_pair_absolute[1], st.max_pair_absolute[2]};
    r["max_bracket"] = st.max_bracket;
    r["mean_bracket"] = st.mean_bracket;
    r["max_ratio"] = st.max_ratio;
    r["mean_ratio"] = st.mean_ratio;
    r["median_ratio"] = st.median_ratio;
    r["max_identity_residual"] = st.max_identity_residual;
    const double worst = std::max({st.max_pair_relative[0], st.max_pair_relative[1], st.max_pair_relative[2]});
    r["orthogonal"] = worst < 1e-10;
    out.report = std::move(r);
    if (in.rep.abelian && worst >= 1e-10)
    {
        out.exit_code = exit_disagreement;
        out.message = "abelian representation with non-orthogonal gradients (max relative " + std::to_string(worst)
                      + ")";
    }
    return out;
}

}  // namespace hkq::report
