// hkq: exact Betti numbers of toric hyperkaehler quotients, with numerical gradient-flow checks.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hkq/errors.hpp"
#include "hkq/report.hpp"

using namespace hkq;
using report::Json;

namespace {

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path);
    try
    {
        return Json::parse(in);
    }
    catch (const Json::parse_error& e)
    {
        throw InvalidInput(path + ": " + e.what());
    }
}

void write_output(const std::string& text, const std::string& out_path)
{
    if (out_path.empty())
    {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw InvalidInput("cannot write " + out_path);
    out << text << '\n';
}

RatVec parse_column(const std::string& text)
{
    // "1,0,-1" or a JSON array
    std::string s = text;
    if (!s.empty() && s.front() == '[')
    {
        RatVec c;
        for (const auto& e : Json::parse(s))
            c.push_back(e.is_string() ? parse_rat(e.get<std::string>()) : Rat(e.get<long long>()));
        return c;
    }
    RatVec c;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        c.push_back(parse_rat(item));
    return c;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Betti numbers and gradient flows for toric hyperkaehler quotients"};
    app.require_subcommand(1);

    std::string out_path;
    std::uint64_t seed = 0;
    bool sample_generic = false;
    std::size_t max_n = default_max_n;
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--seed", seed, "seed for parameter sampling and flow starts");
    app.add_flag("--sample-generic", sample_generic, "replace alpha and beta by sampled generic values");
    app.add_option("--max-n", max_n, "refuse to enumerate flats for more weights than this");

    std::string input;
    auto* analyze_cmd = app.add_subcommand("analyze", "flats, Morse table, census, ring; checks the three routes agree");
    analyze_cmd->add_option("setup", input, "setup JSON")->required();
    analyze_cmd->fallthrough();

    auto* census_cmd = app.add_subcommand("census", "bounded face census of the Gale dual arrangement");
    census_cmd->add_option("setup", input, "setup JSON")->required();
    census_cmd->fallthrough();

    std::string column;
    bool check_recurrence = false;
    auto* modify_cmd = app.add_subcommand("modify", "modification by a circle and the Poincare recurrence");
    modify_cmd->add_option("setup", input, "setup JSON")->required();
    modify_cmd->add_option("--column", column, "circle weights c, e.g. 1,0")->required();
    modify_cmd->add_flag("--check-recurrence", check_recurrence, "exit 4 if the recurrence fails");
    modify_cmd->fallthrough();

    std::string function = "muC2", csv_path;
    std::size_t trials = 8;
    double max_time = 1e4, grad_tol = 1e-8;
    auto* flow_cmd = app.add_subcommand("flow", "gradient-flow ensemble on the torus representation of a setup");
    flow_cmd->add_option("setup", input, "setup JSON")->required();
    flow_cmd->add_option("--function", function, "muR2, muC2 or muHK2")->check(CLI::IsMember({"muR2", "muC2", "muHK2"}));
    flow_cmd->add_option("--trials", trials);
    flow_cmd->add_option("--max-time", max_time);
    flow_cmd->add_option("--grad-tol", grad_tol);
    flow_cmd->add_option("--csv", csv_path, "per-sample trajectory CSV");
    flow_cmd->fallthrough();

    std::size_t samples = 1000;
    double radius = 1.0;
    auto* cross_cmd = app.add_subcommand("crossterm", "cross terms between the three gradient components");
    cross_cmd->add_option("rep", input, "representation JSON")->required();
    cross_cmd->add_option("--samples", samples);
    cross_cmd->add_option("--radius", radius);
    cross_cmd->fallthrough();

    CLI11_PARSE(app, argc, argv);

    report::AnalyzeOptions opts{sample_generic, seed, max_n};
    try
    {
        const Json in = read_json(input);
        report::Outcome outcome;
        if (*analyze_cmd)
            outcome = report::analyze(report::parse_setup(in), opts);
        else if (*census_cmd)
            outcome = report::census(report::parse_setup(in), opts);
        else if (*modify_cmd)
            outcome = report::modify(report::parse_setup(in), parse_column(column), check_recurrence, opts);
        else if (*flow_cmd)
        {
            report::FlowCommandOptions fo;
            fo.which = flow::parse_function(function);
            fo.trials = trials;
            fo.ensemble.flow.max_time = max_time;
            fo.ensemble.flow.grad_tol = grad_tol;
            fo.ensemble.keep_trajectories = !csv_path.empty();
            std::vector<flow::FlowRecord> records;
            outcome = report::run_flow(report::parse_setup(in), fo, opts, &records);
            if (!csv_path.empty() && outcome.exit_code == report::exit_ok)
            {
                std::ofstream csv(csv_path);
                csv << report::flow_csv(records);
            }
        }
        else
            outcome = report::crossterm(report::parse_rep(in), samples, seed, radius);

        if (!outcome.message.empty())
            std::cerr << "hkq: " << outcome.message << '\n';
        write_output(outcome.report.dump(2), out_path);
        return outcome.exit_code;
    }
    catch (const InvalidInput& e)
    {
        std::cerr << "hkq: " << e.what() << '\n';
        return report::exit_invalid_input;
    }
    catch (const DimensionMismatch& e)
    {
        std::cerr << "hkq: " << e.what() << '\n';
        return report::exit_invalid_input;
    }
    catch (const RankDeficient& e)
    {
        std::cerr << "hkq: " << e.what() << '\n';
        return report::exit_invalid_input;
    }
    catch (const EnumerationTooLarge& e)
    {
        std::cerr << "hkq: " << e.what() << '\n';
        return report::exit_invalid_input;
    }
    catch (const CircleInsideTorus& e)
    {
        std::cerr << "hkq: " << e.what() << '\n';
        return report::exit_non_generic;
    }
    catch (const NonGenericAlpha& e)
    {
        std::cerr << "hkq: " << e.what() << '\n';
        return report::exit_non_generic;
    }
    catch (const NonGenericBeta& e)
    {
        std::cerr << "hkq: " << e.what() << '\n';
        return report::exit_non_generic;
    }
    catch (const SamplingExhausted& e)
    {
        std::cerr << "hkq: " << e.what() << '\n';
        return report::exit_non_generic;
    }
    catch (const DegenerateNormal& e)
    {
        std::cerr << "hkq: " << e.what() << '\n';
        return report::exit_non_generic;
    }
    catch (const NotSimple& e)
    {
        std::cerr << "hkq: " << e.what() << '\n';
        return report::exit_non_generic;
    }
    catch (const Error& e)
    {
        std::cerr << "hkq: internal check failed: " << e.what() << '\n';
        return report::exit_disagreement;
    }
    catch (const std::exception& e)
    {
        std::cerr << "hkq: " << e.what() << '\n';
        return report::exit_invalid_input;
    }
}
