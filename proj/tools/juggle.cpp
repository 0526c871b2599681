// juggle: enumerate states, build kernels, evaluate stationary laws and
// normalizations, run the verification suites and simulations.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or validation error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "juggling/juggling.hpp"

using namespace juggling;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

enum class Format { Table, Json, Csv };

struct ChainArgs {
    std::string model = "mjmc";
    int h = -1;
    int k = -1;
    int H = -1;
    int K = -1;
    int l = -1;
    std::string family = "explicit";
    std::string xs;
    std::string q;
    std::string a;
    std::string zs;
    std::string letters;
    int cap = 6;
    bool allow_reducible = false;
    bool allow_unnormalized = false;
};

struct OutputArgs {
    bool json = false;
    bool csv = false;
    bool as_float = false;

    Format format() const { return json ? Format::Json : csv ? Format::Csv : Format::Table; }
};

/// Decimal literals are accepted only with --float and read as exact binary doubles.
Rational parse_number(const std::string& text, bool allow_float)
{
    if (text.find_first_of(".eE") != std::string::npos) {
        if (!allow_float)
            throw DomainError("decimal literal '" + text + "' needs --float; use p/q for exact input");
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw DomainError("malformed number '" + text + "'");
        return Rational(v);
    }
    return parse_rational(text);
}

std::vector<Rational> parse_numbers(const std::string& csv, bool allow_float)
{
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number(item, allow_float));
    if (out.empty())
        throw DomainError("empty parameter list");
    return out;
}

void add_chain_options(CLI::App* cmd, ChainArgs& c)
{
    std::vector<std::string> models;
    for (const auto& [n, m] : model_names())
        models.push_back(n);
    cmd->add_option("--model,-m", c.model, "chain model")->check(CLI::IsMember(models));
    cmd->add_option("-h,--height", c.h, "word length h");
    cmd->add_option("-k,--empties", c.k, "number of Empty sites k");
    cmd->add_option("-H", c.H, "ground set size H = h+1 (set-partition models)");
    cmd->add_option("-K", c.K, "block count K = k+1 (enriched chain)");
    cmd->add_option("-l,--balls", c.l, "number of parts l (partition models)");
    cmd->add_option("--family", c.family, "parameter family")
        ->check(CLI::IsMember({"explicit", "uniform", "geometric", "truncated-geometric", "bounded-geometric"}));
    cmd->add_option("--xs", c.xs, "insertion probabilities x_0,..,x_k as p/q");
    cmd->add_option("--q", c.q, "family parameter q");
    cmd->add_option("--a", c.a, "fugacity a (add-drop) or z_{h+1} (annihilation)");
    cmd->add_option("--zs", c.zs, "weights z_1,..,z_h");
    cmd->add_option("--letters", c.letters, "annihilation letter probabilities z_1,..,z_L");
    cmd->add_option("--cap", c.cap, "part cap (umjmc) or size cap (imjmc) for listed states");
    cmd->add_flag("--allow-reducible", c.allow_reducible, "accept x_0 = 0 or a = 0");
    cmd->add_flag("--allow-unnormalized", c.allow_unnormalized, "accept parameters not summing to 1");
}

void add_output_options(CLI::App* cmd, OutputArgs& o)
{
    auto* j = cmd->add_flag("--json", o.json, "JSON output");
    cmd->add_flag("--csv", o.csv, "CSV output")->excludes(j);
    cmd->add_flag("--float", o.as_float, "accept decimal parameters and print floats");
}

/// Without `need_params`, a missing parameter list falls back to the uniform family.
ChainSpec resolve_spec(ChainArgs c, bool allow_float, bool need_params = true)
{
    if (!need_params && c.family == "explicit" && c.xs.empty() && c.zs.empty() && c.letters.empty())
        c.family = c.model == "umjmc" || c.model == "imjmc" ? "geometric" : "uniform";
    if (!need_params && c.family == "geometric" && c.q.empty())
        c.q = "1/2";
    ChainSpec s;
    s.model = parse_model(c.model);
    s.options = BuildOptions{c.allow_reducible, c.allow_unnormalized};
    s.cap = c.cap;
    const bool set_model = s.model == Model::Enriched || s.model == Model::EnrichedAddDrop || s.model == Model::EnrichedAnnihilation;

    s.h = c.h;
    s.k = c.k;
    if (set_model && c.H >= 0)
        s.h = c.H - 1;
    if (s.model == Model::Enriched && c.K >= 0)
        s.k = c.K - 1;
    const bool partition_model = s.model == Model::MjmcPartition || s.model == Model::Umjmc;
    if (partition_model && c.l >= 0) {
        if (s.k < 0 && s.model == Model::Umjmc)
            s.k = 0;
        s.h = s.k + c.l;
    }
    if (s.model == Model::Imjmc) {
        s.h = std::max(s.h, 0);
        s.k = 0;
    }

    auto q = [&] {
        if (c.q.empty())
            throw DomainError("family '" + c.family + "' needs --q");
        return parse_number(c.q, allow_float);
    };

    switch (s.model) {
    case Model::Mjmc:
    case Model::MjmcPartition:
    case Model::Enriched: {
        if (s.h < 0 || s.k < 0)
            throw DomainError("model '" + c.model + "' needs sizes (-h and -k, or -H and -K, or -k and -l)");
        if (c.family == "explicit")
            s.xs = parse_numbers(c.xs, allow_float);
        else if (c.family == "uniform")
            s.xs = uniform_params<Rational>(s.k);
        else if (c.family == "truncated-geometric")
            s.xs = truncated_geometric_params(s.k, q());
        else
            s.xs = bounded_geometric_params(s.k, q());
        break;
    }
    case Model::AddDrop:
    case Model::EnrichedAddDrop: {
        if (s.h < 0)
            throw DomainError("model '" + c.model + "' needs -h (or -H)");
        if (c.family == "uniform") {
            s.adddrop = AddDropParams<Rational>{1, std::vector<Rational>(static_cast<std::size_t>(s.h), Rational(1))};
        } else {
            if (c.a.empty())
                throw DomainError("add-drop models need --a and --zs");
            s.adddrop.a = parse_number(c.a, allow_float);
            if (s.h > 0)
                s.adddrop.zs = parse_numbers(c.zs, allow_float);
        }
        break;
    }
    case Model::Annihilation:
    case Model::EnrichedAnnihilation:
    case Model::DoublyEnriched: {
        if (s.h < 0)
            throw DomainError("model '" + c.model + "' needs -h (or -H)");
        if (c.family == "uniform") {
            s.letters = std::vector<Rational>(static_cast<std::size_t>(s.h) + 1, Rational(1, s.h + 1));
            for (auto& z : s.letters)
                z.canonicalize();
        } else if (!c.letters.empty()) {
            s.letters = parse_numbers(c.letters, allow_float);
        } else {
            if (c.a.empty())
                throw DomainError("annihilation models need --zs and --a, or --letters");
            AddDropParams<Rational> p{parse_number(c.a, allow_float), {}};
            if (s.h > 0)
                p.zs = parse_numbers(c.zs, allow_float);
            s.letters = annihilation_letters(s.h, p);
        }
        break;
    }
    case Model::Umjmc:
    case Model::Imjmc: {
        if (s.model == Model::Umjmc && c.l < 0)
            throw DomainError("umjmc needs -l");
        if (c.family == "geometric") {
            s.tail = TailParams<Rational>::geometric(q());
        } else if (c.family == "explicit") {
            s.xs = parse_numbers(c.xs, allow_float);
            s.tail = TailParams<Rational>::finite(s.xs);
            if (s.model == Model::Umjmc) {
                s.k = static_cast<int>(s.xs.size()) - 1;
                s.h = s.k + c.l;
            }
        } else {
            throw DomainError("infinite models take --family geometric or explicit --xs");
        }
        break;
    }
    }
    return s;
}

std::string render(const Rational& v, bool as_float)
{
    return as_float ? to_string(v.get_d()) : to_string(v);
}

void print_distribution(const Distribution<Rational>& d, const OutputArgs& out)
{
    switch (out.format()) {
    case Format::Json:
        std::cout << distribution_to_json(d).dump(2) << '\n';
        break;
    case Format::Csv:
        std::cout << distribution_to_csv(d);
        break;
    case Format::Table:
        for (std::size_t i = 0; i < d.size(); ++i)
            std::cout << d.labels[i] << '\t' << render(d.weights[i], out.as_float) << '\n';
        break;
    }
}

// ---------------------------------------------------------------------------

int cmd_states(const ChainArgs& c, const OutputArgs& out)
{
    const auto spec = resolve_spec(c, out.as_float, false);
    const auto labels = state_labels(spec);
    if (out.format() == Format::Json) {
        std::cout << Json{{"model", c.model}, {"states", labels}}.dump(2) << '\n';
    } else {
        if (out.format() == Format::Csv)
            std::cout << "index,state\n";
        for (std::size_t i = 0; i < labels.size(); ++i)
            std::cout << i << (out.format() == Format::Csv ? "," : "\t") << labels[i] << '\n';
    }
    return kOk;
}

int cmd_matrix(const ChainArgs& c, const OutputArgs& out)
{
    const auto spec = resolve_spec(c, out.as_float);
    const auto k = build_kernel(spec);
    switch (out.format()) {
    case Format::Json:
        std::cout << kernel_to_json(k).dump(2) << '\n';
        break;
    case Format::Csv:
        std::cout << "from,to,probability\n";
        for (std::size_t i = 0; i < k.size(); ++i) {
            for (const auto& e : k.row(i))
                std::cout << k.label(i) << ',' << k.label(e.col) << ',' << render(e.p, out.as_float) << '\n';
        }
        break;
    case Format::Table:
        for (std::size_t i = 0; i < k.size(); ++i) {
            std::cout << k.label(i) << ':';
            for (const auto& e : k.row(i))
                std::cout << ' ' << k.label(e.col) << '=' << render(e.p, out.as_float);
            std::cout << '\n';
        }
        break;
    }
    return kOk;
}

int cmd_stationary(const ChainArgs& c, const OutputArgs& out, bool oracle)
{
    const auto spec = resolve_spec(c, out.as_float);
    if (!oracle) {
        print_distribution(closed_form_stationary(spec), out);
        return kOk;
    }
    const auto kernel = build_kernel(spec);
    const auto solved = solve_stationary(kernel);
    std::optional<Distribution<Rational>> closed;
    std::string closed_error;
    try {
        closed = closed_form_stationary(spec);
    } catch (const DomainError& e) {
        closed_error = e.what();
    }
    const auto* dist = std::get_if<Distribution<Rational>>(&solved);
    const bool equal = dist && closed && *dist == *closed;

    if (out.format() == Format::Json) {
        Json j{{"model", c.model}, {"equal", equal}};
        j["closed_form"] = closed ? distribution_to_json(*closed) : Json{{"error", closed_error}};
        if (dist) {
            j["oracle"] = distribution_to_json(*dist);
        } else {
            const auto& nu = std::get<NonUniqueStationary>(solved);
            Json classes = Json::array();
            for (const auto& cls : nu.closed) {
                Json members = Json::array();
                for (auto s : cls.states)
                    members.push_back(kernel.label(s));
                classes.push_back(members);
            }
            j["oracle"] = Json{{"non_unique", true}, {"nullity", nu.nullity}, {"closed_classes", classes}};
        }
        std::cout << j.dump(2) << '\n';
    } else {
        if (dist) {
            std::cout << "state\tclosed_form\toracle\n";
            for (std::size_t i = 0; i < dist->size(); ++i)
                std::cout << dist->labels[i] << '\t' << (closed ? render(closed->weights[i], out.as_float) : "-") << '\t'
                          << render(dist->weights[i], out.as_float) << '\n';
        } else {
            const auto& nu = std::get<NonUniqueStationary>(solved);
            std::cout << "non-unique stationary distribution: nullity " << nu.nullity << ", " << nu.closed.size() << " closed classes\n";
            for (const auto& cls : nu.closed) {
                std::cout << " ";
                for (auto s : cls.states)
                    std::cout << ' ' << kernel.label(s);
                std::cout << '\n';
            }
        }
        if (!closed)
            std::cout << "closed form: " << closed_error << '\n';
        std::cout << "equal=" << (equal ? "true" : "false") << '\n';
    }
    if (!dist)
        return kOk; // non-uniqueness is a diagnosis, not a failed check
    return equal ? kOk : kVerifyFailed;
}

int cmd_z(const ChainArgs& c, const OutputArgs& out, bool word_sum, double tol)
{
    const auto spec = resolve_spec(c, out.as_float);
    Json j{{"model", c.model}};
    Rational value;
    switch (spec.model) {
    case Model::Mjmc:
    case Model::MjmcPartition:
    case Model::Enriched:
        value = z_mjmc(spec.h, spec.k, spec.xs);
        j["h"] = spec.h;
        j["k"] = spec.k;
        if (word_sum) {
            const auto ws = z_mjmc_word_sum(spec.h, spec.k, spec.xs);
            j["word_sum"] = to_string(ws);
            j["agree"] = ws == value;
        }
        break;
    case Model::AddDrop:
    case Model::EnrichedAddDrop:
        value = z_adddrop(spec.h, spec.adddrop);
        j["h"] = spec.h;
        break;
    case Model::Umjmc: {
        const auto r = umjmc_mass(spec.l(), *spec.tail, tol);
        value = r.value;
        j["l"] = spec.l();
        j["cutoff"] = r.cutoff;
        j["bound"] = r.bound;
        j["truncated"] = r.bound > 0;
        if (spec.tail->is_geometric()) {
            value = geometric_umjmc_mass(spec.l(), spec.tail->q());
            j["truncated"] = false;
        }
        break;
    }
    case Model::Imjmc: {
        const auto r = imjmc_mass(*spec.tail, tol);
        value = r.value;
        j["cutoff"] = r.cutoff;
        j["bound"] = r.bound;
        j["truncated"] = r.bound > 0;
        break;
    }
    default:
        throw DomainError("annihilation models carry no normalization factor");
    }
    j["Z"] = to_string(value);
    j["float"] = value.get_d();
    if (out.format() == Format::Json) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << render(value, out.as_float || j.value("truncated", false)) << '\n';
        if (j.value("truncated", false))
            std::cout << "cutoff=" << j["cutoff"] << " bound=" << j["bound"] << '\n';
        if (j.contains("agree"))
            std::cout << "word_sum=" << j["word_sum"].get<std::string>() << " agree=" << (j["agree"].get<bool>() ? "true" : "false") << '\n';
    }
    return j.value("agree", true) ? kOk : kVerifyFailed;
}

int cmd_special(int h, int k, const std::string& qtext, const OutputArgs& out)
{
    if (h < 0 || k < 0 || k > h)
        throw DomainError("special needs 0 <= k <= h");
    const auto q = parse_number(qtext, out.as_float);
    const auto ids = z_specializations(h, k, q);
    bool all = true;
    Json arr = Json::array();
    for (const auto& id : ids) {
        all = all && id.holds();
        arr.push_back(Json{{"identity", id.name}, {"lhs", to_string(id.lhs)}, {"rhs", to_string(id.rhs)}, {"holds", id.holds()}});
    }
    if (out.format() == Format::Json) {
        std::cout << Json{{"h", h}, {"k", k}, {"q", to_string(q)}, {"identities", arr}, {"all_hold", all}}.dump(2) << '\n';
    } else {
        for (const auto& id : ids)
            std::cout << id.name << '\t' << render(id.lhs, out.as_float) << '\t' << render(id.rhs, out.as_float) << '\t'
                      << (id.holds() ? "holds" : "FAILS") << '\n';
    }
    return all ? kOk : kVerifyFailed;
}

int cmd_verify(const std::string& suite, int h, const OutputArgs& out)
{
    if (out.as_float)
        throw DomainError("verification suites are exact; --float is not accepted");
    if (h < 0)
        throw DomainError("verify needs -h >= 0");
    std::vector<std::string> names;
    if (suite == "all")
        names = suite_names();
    else
        names.push_back(suite);
    bool all = true;
    Json reports = Json::array();
    for (const auto& name : names) {
        const auto rep = run_suite(name, h);
        all = all && rep.passed();
        if (out.format() == Format::Json) {
            Json checks = Json::array();
            for (const auto& ch : rep.checks)
                checks.push_back(Json{{"name", ch.name}, {"passed", ch.passed}});
            reports.push_back(Json{{"suite", name}, {"passed", rep.passed()}, {"checks", checks}});
        } else {
            for (const auto& ch : rep.checks)
                std::cout << (ch.passed ? "ok   " : "FAIL ") << name << ": " << ch.name << '\n';
            std::cout << name << ": " << rep.checks.size() - rep.failures() << '/' << rep.checks.size() << " passed\n";
        }
    }
    if (out.format() == Format::Json)
        std::cout << Json{{"h", h}, {"passed", all}, {"suites", reports}}.dump(2) << '\n';
    return all ? kOk : kVerifyFailed;
}

struct SimArgs {
    std::uint64_t seed = 1;
    int steps = 10000;
    int burn_in = -1;
    int replicas = -1;
    std::string initial;
    bool strong = false;
};

int cmd_simulate(const ChainArgs& c, const OutputArgs& out, SimArgs a)
{
    if (const char* env = std::getenv("JUGGLE_SEED"))
        a.seed = std::stoull(env);
    const auto spec = resolve_spec(c, out.as_float);
    SimConfig cfg;
    cfg.seed = a.seed;
    cfg.steps = a.steps;
    cfg.replicas = a.replicas >= 0 ? a.replicas : (a.strong ? 100000 : 1);
    cfg.burn_in = a.burn_in >= 0 ? a.burn_in : default_burn_in(spec);
    if (!a.initial.empty())
        cfg.initial = a.initial;
    const Json config{{"model", c.model}, {"seed", cfg.seed}, {"steps", cfg.steps}, {"burn_in", cfg.burn_in}, {"replicas", cfg.replicas}};

    if (spec.model == Model::Umjmc) {
        const auto counts = simulate_umjmc(spec.l(), spec.tail_params(), cfg);
        if (out.format() == Format::Json) {
            Json hist = Json::object();
            for (const auto& [p, n] : counts)
                hist[p.str()] = n;
            std::cout << Json{{"config", config}, {"counts", hist}}.dump(2) << '\n';
        } else {
            std::cout << (out.format() == Format::Csv ? "state,count\n" : "");
            for (const auto& [p, n] : counts)
                std::cout << (out.format() == Format::Csv ? "\"" + p.str() + "\"," : p.str() + "\t") << n << '\n';
        }
        return kOk;
    }

    const auto kernel = build_kernel(spec);
    const auto exact = closed_form_stationary(spec);
    if (a.strong) {
        const auto rep = strong_stationary_check(kernel, exact, spec.h, cfg.replicas, cfg.seed);
        Json starts = Json::array();
        for (const auto& s : rep.starts)
            starts.push_back(Json{{"start", s.start}, {"tv", s.tv}});
        const Json j{{"config", config},           {"horizon", rep.horizon},       {"exact_rows_match", rep.exact_rows_match},
                     {"exact_rows_equal", rep.exact_rows_equal}, {"tv_bound", rep.tv_bound}, {"starts", starts},
                     {"passed", rep.passed()}};
        if (out.format() == Format::Json) {
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "P^" << rep.horizon << " rows equal stationary: " << (rep.exact_rows_match ? "true" : "false") << '\n';
            for (const auto& s : rep.starts)
                std::cout << s.start << "\ttv=" << s.tv << '\n';
            std::cout << "bound=" << rep.tv_bound << " passed=" << (rep.passed() ? "true" : "false") << '\n';
        }
        return rep.passed() ? kOk : kVerifyFailed;
    }

    const auto emp = run(kernel, cfg);
    const double tv = tv_distance(emp, exact);
    const double bound = tv_error_bound(kernel.size(), emp.total);
    switch (out.format()) {
    case Format::Json:
        std::cout << Json{{"config", config}, {"empirical", empirical_to_json(emp)}, {"exact", distribution_to_json(exact)}, {"tv", tv}, {"stderr_bound", bound}}
                         .dump(2)
                  << '\n';
        break;
    case Format::Csv:
        std::cout << empirical_to_csv(emp);
        break;
    case Format::Table: {
        const auto f = emp.frequencies();
        std::cout << "state\tcount\tfrequency\texact\n";
        for (std::size_t i = 0; i < f.size(); ++i)
            std::cout << emp.labels[i] << '\t' << emp.counts[i] << '\t' << f[i] << '\t' << exact.weights[i].get_d() << '\n';
        std::cout << "tv=" << tv << " bound=" << bound << '\n';
        break;
    }
    }
    return kOk;
}

int cmd_project(const std::string& map, const std::string& input, const ChainArgs& c, const OutputArgs& out, bool check)
{
    Json j{{"map", map}};
    if (!input.empty()) {
        std::string image;
        if (map == "psi")
            image = psi(SetPartition::parse(input)).str();
        else if (map == "phi")
            image = phi(parse_letter_word(input)).str();
        else
            image = phi_tilde(parse_letter_word(input)).str();
        j["input"] = input;
        j["image"] = image;
    }
    bool ok = true;
    if (check) {
        const auto spec = resolve_spec(c, out.as_float);
        if (map == "psi") {
            if (spec.model == Model::Mjmc || spec.model == Model::Enriched) {
                ok = verify_intertwining(build_enriched(spec.H(), spec.K(), spec.xs), lumping_psi(spec.H(), spec.K()),
                                         build_mjmc(spec.h, spec.k, spec.xs));
            } else if (spec.model == Model::AddDrop || spec.model == Model::EnrichedAddDrop) {
                ok = verify_intertwining(build_enriched_adddrop(spec.H(), spec.adddrop), lumping_psi_all(spec.H()),
                                         build_adddrop(spec.h, spec.adddrop));
            } else if (spec.is_annihilation_family()) {
                ok = verify_intertwining(build_enriched_annihilation(spec.H(), spec.letters), lumping_psi_all(spec.H()),
                                         build_annihilation(spec.h, spec.letters));
            } else {
                throw DomainError("psi intertwining applies to mjmc, add-drop and annihilation models");
            }
        } else {
            if (!spec.is_annihilation_family())
                throw DomainError("phi and phi~ intertwining apply to the annihilation models");
            const auto L = static_cast<int>(spec.letters.size());
            const auto doubly = build_doubly_enriched(spec.h, spec.letters);
            ok = map == "phi" ? verify_intertwining(doubly, phi_map(spec.h, L), build_annihilation(spec.h, spec.letters))
                              : verify_intertwining(doubly, phi_tilde_map(spec.h, L), build_enriched_annihilation(spec.H(), spec.letters));
        }
        j["intertwining"] = ok;
    }
    if (out.format() == Format::Json) {
        std::cout << j.dump(2) << '\n';
    } else {
        if (j.contains("image"))
            std::cout << j["image"].get<std::string>() << '\n';
        if (check)
            std::cout << "intertwining=" << (ok ? "true" : "false") << '\n';
    }
    return ok ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multivariate juggling Markov chains: states, kernels, stationary laws, verification, simulation"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    ChainArgs chain;
    OutputArgs out;

    auto* states = app.add_subcommand("states", "list the ordered state space");
    add_chain_options(states, chain);
    add_output_options(states, out);

    auto* matrix = app.add_subcommand("matrix", "emit the transition kernel");
    add_chain_options(matrix, chain);
    add_output_options(matrix, out);

    bool oracle = false;
    auto* stationary = app.add_subcommand("stationary", "closed-form stationary law, optionally against the exact solver");
    add_chain_options(stationary, chain);
    add_output_options(stationary, out);
    stationary->add_flag("--oracle", oracle, "also solve pi P = pi exactly and compare");

    bool word_sum = false;
    double tol = 1e-12;
    auto* z = app.add_subcommand("z", "normalization factor");
    add_chain_options(z, chain);
    add_output_options(z, out);
    z->add_flag("--word-sum", word_sum, "also evaluate the sum over states");
    z->add_option("--tol", tol, "truncation tolerance for infinite models");

    int sh = -1;
    int sk = -1;
    std::string sq;
    auto* special = app.add_subcommand("special", "the Stirling, q-Stirling and q-binomial specializations of Z_{h,k}");
    special->add_option("-h,--height", sh, "h")->required();
    special->add_option("-k,--empties", sk, "k")->required();
    special->add_option("--q", sq, "q as p/q")->required();
    add_output_options(special, out);

    std::string suite = "all";
    int vh = 4;
    auto* verify = app.add_subcommand("verify", "run invariant suites; exit 1 on any failure");
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suites));
    verify->add_option("-h,--height", vh, "largest word length");
    add_output_options(verify, out);

    SimArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo simulation (JUGGLE_SEED overrides --seed)");
    add_chain_options(simulate, chain);
    add_output_options(simulate, out);
    simulate->add_option("--seed", sim.seed, "64-bit seed");
    simulate->add_option("--steps", sim.steps, "recorded steps after burn-in");
    simulate->add_option("--burn-in", sim.burn_in, "burn-in steps (default 10h, or h for annihilation models)");
    simulate->add_option("--replicas", sim.replicas, "independent replicas (default 1, or 100000 with --strong-stationary)");
    simulate->add_option("--initial", sim.initial, "start state label (default: first state)");
    simulate->add_flag("--strong-stationary", sim.strong, "law at time h from every start against the stationary law");

    std::string map = "psi";
    std::string input;
    bool check = false;
    auto* project = app.add_subcommand("project", "apply psi, phi or phi~ and check intertwining");
    project->add_option("--map", map, "projection")->check(CLI::IsMember({"psi", "phi", "phi-tilde"}));
    project->add_option("--input", input, "a set partition (psi) or letter word (phi, phi-tilde)");
    project->add_flag("--check", check, "verify the intertwining relation for the chain given by the model options");
    add_chain_options(project, chain);
    add_output_options(project, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*states)
            return cmd_states(chain, out);
        if (*matrix)
            return cmd_matrix(chain, out);
        if (*stationary)
            return cmd_stationary(chain, out, oracle);
        if (*z)
            return cmd_z(chain, out, word_sum, tol);
        if (*special)
            return cmd_special(sh, sk, sq, out);
        if (*verify)
            return cmd_verify(suite, vh, out);
        if (*simulate)
            return cmd_simulate(chain, out, sim);
        if (*project)
            return cmd_project(map, input, chain, out, check);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
