// Copyright 2026 The bstghz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bstghz/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <optional>

#include "bstghz/common_cause.hpp"
#include "bstghz/document.hpp"
#include "bstghz/ghz.hpp"
#include "bstghz/quantum.hpp"
#include "bstghz/report.hpp"

namespace bst::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string format = "text";
    bool serial = false;

    std::string file;
    std::string output;
    std::string contexts = "xxx,xxy,xyy,xyx";
    bool trace = false;
    std::size_t limit = 8;
    std::string constraints;
    std::string context;
    double threshold = 1e-9;
    std::string spread;
    std::vector<std::string> nspreads;
    std::string vector;
    bool search = false;

    Execution exec() const { return serial ? Execution::Serial : Execution::Parallel; }
};

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        out.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::string signs_str(const ghz::Signs &s) {
    std::string out;
    for (auto x : s) {
        out += ghz::to_char(x);
    }
    return out;
}

/// "xyy:+,xxx:-"
std::vector<ghz::ProductConstraint> parse_constraints(const std::string &text) {
    if (text.empty()) {
        return ghz::ghz_product_constraints();
    }
    std::vector<ghz::ProductConstraint> out;
    for (const auto &item : split_list(text)) {
        auto colon = item.find(':');
        if (colon == std::string::npos || colon + 2 != item.size() ||
            (item.back() != '+' && item.back() != '-')) {
            throw Error(ErrorCode::BadFlag, fmt::format("bad constraint '{}' (want e.g. xyy:+)", item));
        }
        out.push_back({ghz::Context::parse(item.substr(0, colon)),
                       item.back() == '+' ? ghz::Sign::Plus : ghz::Sign::Minus});
    }
    return out;
}

json constraints_json(const std::vector<ghz::ProductConstraint> &cs) {
    json out = json::array();
    for (const auto &c : cs) {
        out.push_back({{"context", c.context.str()}, {"target", std::string(1, ghz::to_char(c.target))}});
    }
    return out;
}

json condition_json(const ConditionResult &c) {
    return {{"holds", c.holds}, {"witnesses", c.witnesses}};
}

json validation_json(const ValidationReport &r) {
    json j = {{"check", r.check},
              {"status", std::string(to_string(r.status))},
              {"violations", r.violations}};
    if (!r.note.empty()) {
        j["note"] = r.note;
    }
    return j;
}

void add_check(Report &report, const ValidationReport &r) {
    report.merge_status(r.status);
    std::string line = fmt::format("{}: {}", r.check, to_string(r.status));
    if (!r.note.empty()) {
        line += fmt::format(" ({})", r.note);
    }
    report.add(line);
    for (const auto &v : r.violations) {
        report.add("  " + v);
    }
    report.payload["checks"].push_back(validation_json(r));
}

Scenario load_scenario(const std::string &path) { return Scenario::load(load_document(path)); }

Report cmd_validate(const Options &o) {
    Report r{"validate", Status::Pass, {}, json::object(), {}};
    auto scenario = load_scenario(o.file);
    const auto &model = scenario.model();
    r.payload["points"] = model.size();
    r.payload["histories"] = model.histories().size();
    r.payload["checks"] = json::array();
    r.add(fmt::format("points: {}, histories: {}", model.size(), model.histories().size()));

    add_check(r, check_prior_choice(model));
    add_check(r, check_infima_suprema(model));
    add_check(r, check_density(model));

    json events = json::object();
    for (const auto &[name, e] : scenario.events()) {
        auto c = classify_event(model, e);
        events[name] = {{"initial", c.is_initial}, {"outcome", c.is_outcome}, {"stable", c.is_stable}};
    }
    r.payload["events"] = events;

    std::size_t invalid_spreads = 0;
    for (const auto &[name, s] : scenario.spreads()) {
        auto sr = validate_spread(model, s);
        invalid_spreads += sr.valid() ? 0 : 1;
        auto vr = sr.to_report();
        r.merge_status(vr.status);
        for (const auto &v : vr.violations) {
            r.add(fmt::format("{}: {}", vr.check, v));
        }
        r.payload["checks"].push_back(validation_json(vr));
    }
    r.add(fmt::format("spreads: {} of {} valid", scenario.spreads().size() - invalid_spreads,
                      scenario.spreads().size()));

    json grades = json::object();
    std::vector<NSpread> nspreads;
    for (const auto &[name, ns] : scenario.nspreads()) {
        nspreads.push_back(ns);
        try {
            auto g = consistency_grade(model, ns, o.exec());
            json inconsistent = json::array();
            for (const auto &v : g.inconsistent) {
                inconsistent.push_back(describe(ns, v));
            }
            grades[name] = {{"minimal", g.minimal},
                            {"one", g.one},
                            {"maximal", g.maximal},
                            {"spacelike", is_spacelike(model, ns)},
                            {"vectors", outcome_vector_count(ns)},
                            {"inconsistent", inconsistent}};
            r.add(fmt::format("{}: {} of {} vectors inconsistent", name, g.inconsistent.size(),
                              outcome_vector_count(ns)));
        } catch (const Error &e) {
            grades[name] = {{"skipped", e.what()}};
            r.add(fmt::format("{}: not graded ({})", name, e.what()));
        }
    }
    r.payload["nspreads"] = grades;

    auto level = classify_determinism(model, nspreads);
    r.payload["determinism"] = {
        {"level", level.level == Level::Deterministic ? "I" : "indeterministic"},
        {"histories", level.histories},
        {"evidence", level.evidence},
        {"note", level.note}};
    r.add(fmt::format("determinism: {}", level.note));
    return r;
}

Report cmd_histories(const Options &o) {
    Report r{"histories", Status::Pass, {}, json::object(), {}};
    auto scenario = load_scenario(o.file);
    const auto &model = scenario.model();
    json list = json::array();
    for (const auto &h : model.histories()) {
        std::vector<std::string> members;
        h.members.for_each([&](PointId p) { members.push_back(model.label(p)); });
        list.push_back({{"top", model.label(h.top)}, {"members", members}});
        r.text_body += fmt::format("  {}: {}\n", model.label(h.top), model.describe(h.members));
    }
    r.payload["count"] = model.histories().size();
    r.payload["histories"] = list;
    r.add(fmt::format("histories: {}", model.histories().size()));
    return r;
}

json trace_json(const ReductioTrace &t) {
    json steps = json::array();
    for (const auto &s : t.steps) {
        std::vector<std::string> ctx;
        for (const auto &c : s.contexts) {
            ctx.push_back(c.str());
        }
        steps.push_back({{"rule", std::string(to_string(s.rule))},
                         {"depth", s.depth},
                         {"contexts", ctx},
                         {"conclusion", s.conclusion},
                         {"premises", s.premises}});
    }
    return {{"branches", t.branches}, {"steps", steps}};
}

Report cmd_ghz_refute(const Options &o) {
    Report r{"ghz refute", Status::Pass, {}, json::object(), {}};
    auto contexts = ghz::parse_contexts(o.contexts);
    auto structure = ghz::build_abstract_structure();
    RefuteOptions opts{o.trace, o.exec(), o.limit};
    auto result = refute_joint_common_cause(structure, contexts, opts);

    std::vector<std::string> names, witnesses;
    for (const auto &c : contexts) {
        names.push_back(c.str());
    }
    for (const auto &w : result.witnesses) {
        witnesses.push_back(w.describe());
    }
    r.payload["contexts"] = names;
    r.payload["total"] = result.total;
    r.payload["survivors"] = result.survivors;
    r.payload["witnesses"] = witnesses;
    r.add(fmt::format("survivors: {} of {}", result.survivors, result.total));
    if (result.survivors != 0) {
        r.status = Status::Fail;
        r.add("least survivor: " + witnesses.front());
        r.add("a surviving profile satisfies a necessary relaxation only; it does not establish a "
              "common cause");
    }
    if (result.trace) {
        r.payload["trace"] = trace_json(*result.trace);
        r.add(fmt::format("trace: {} branches closed, ends \"{}\"", result.trace->branches,
                          result.trace->steps.back().conclusion));
        r.text_body = result.trace->render();
    }
    return r;
}

std::string assignment_str(const ghz::ValueAssignment &v) {
    std::string out;
    for (int i = 1; i <= ghz::kStations; ++i) {
        for (auto a : {ghz::Axis::X, ghz::Axis::Y}) {
            auto k = static_cast<std::size_t>((i - 1) * 2 + static_cast<int>(a));
            out += fmt::format("{}{}={} ", ghz::to_char(a), i, ghz::to_char(v[k]));
        }
    }
    out.pop_back();
    return out;
}

Report cmd_ghz_values(const Options &o) {
    Report r{"ghz values", Status::Pass, {}, json::object(), {}};
    auto cs = parse_constraints(o.constraints);
    auto result = ghz::value_assignment_search(cs, o.exec(), o.limit);
    std::vector<std::string> witnesses;
    for (const auto &w : result.witnesses) {
        witnesses.push_back(assignment_str(w));
    }
    r.payload["constraints"] = constraints_json(cs);
    r.payload["total"] = result.total;
    r.payload["satisfying"] = result.satisfying;
    r.payload["witnesses"] = witnesses;
    r.add(fmt::format("satisfying: {} of {}", result.satisfying, result.total));
    if (result.satisfying != 0) {
        r.status = Status::Fail;
        r.add("least assignment: " + witnesses.front());
    }
    return r;
}

Report cmd_ghz_contextual(const Options &o) {
    Report r{"ghz contextual", Status::Pass, {}, json::object(), {}};
    auto cs = parse_constraints(o.constraints);
    auto result = ghz::contextual_assignment_search(cs, o.exec(), o.limit);
    json witnesses = json::array();
    for (const auto &w : result.witnesses) {
        json one = json::array();
        for (std::size_t k = 0; k < w.size(); ++k) {
            one.push_back({{"context", cs[k].context.str()}, {"signs", signs_str(w[k])}});
        }
        witnesses.push_back(one);
    }
    r.payload["constraints"] = constraints_json(cs);
    r.payload["total"] = result.total;
    r.payload["satisfying"] = result.satisfying;
    r.payload["witnesses"] = witnesses;
    r.add(fmt::format("satisfying: {} of {}", result.satisfying, result.total));
    if (result.satisfying == 0) {
        r.status = Status::Fail;
    }
    return r;
}

Report cmd_ghz_oracle(const Options &o) {
    Report r{"ghz oracle", Status::Pass, {}, json::object(), {}};
    std::optional<ghz::Context> only;
    if (!o.context.empty()) {
        only = ghz::Context::parse(o.context);
    }
    auto psi = quantum::ghz_state();
    json amplitudes = json::array();
    for (int k = 0; k < 8; ++k) {
        if (std::abs(psi(k)) > 0) {
            amplitudes.push_back({{"basis", fmt::format("{:03b}", k)},
                                  {"re", psi(k).real()},
                                  {"im", psi(k).imag()}});
        }
    }
    r.payload["state"] = amplitudes;

    auto check = quantum::omega_eigencheck(psi);
    json omegas = json::array();
    std::string line = "eigenvalues:";
    for (const auto &e : check.omegas) {
        omegas.push_back({{"observable", e.spec.str()}, {"eigenvalue", e.eigenvalue}});
        line += fmt::format(" {}={:+g}", e.spec.str(), e.eigenvalue);
    }
    r.payload["omegas"] = omegas;
    r.payload["product"] = check.product;
    r.payload["pairwise_commute"] = check.pairwise_commute;
    r.add(line);
    r.add(fmt::format("product eigenvalue: {:+g}; pairwise commute: {}", check.product,
                      check.pairwise_commute ? "yes" : "no"));
    if (!check.pairwise_commute) {
        r.status = Status::Fail;
    }

    json probs = json::array();
    for (auto c : ghz::all_contexts()) {
        if (only && c != *only) {
            continue;
        }
        for (unsigned s = 0; s < 8; ++s) {
            ghz::GhzVector v{c, ghz::signs_from_index(s)};
            double p = quantum::outcome_probability(c, v.signs, psi);
            probs.push_back({{"context", c.str()},
                             {"signs", signs_str(v.signs)},
                             {"probability", p},
                             {"parity_consistent", ghz::parity_consistent(v)}});
            if (only) {
                r.text_body += fmt::format("  {}  p={:.6f}  parity {}\n", v.str(), p,
                                           ghz::parity_consistent(v) ? "consistent" : "inconsistent");
            }
        }
    }
    r.payload["probabilities"] = probs;

    auto report = quantum::compare_with_stipulation(o.threshold);
    json dis = json::array();
    std::size_t shown = 0;
    for (const auto &d : report.disagreements) {
        if (only && d.vector.context != *only) {
            continue;
        }
        ++shown;
        dis.push_back({{"context", d.vector.context.str()},
                       {"signs", signs_str(d.vector.signs)},
                       {"probability", d.probability},
                       {"parity_consistent", d.parity_consistent}});
    }
    r.payload["threshold"] = report.threshold;
    r.payload["threshold_sensitive"] = report.threshold_sensitive;
    r.payload["disagreements"] = dis;
    r.add(fmt::format("stipulation disagreements: {}{}", shown,
                      only ? " in " + only->str() : std::string(" over 64 vectors")));
    if (!only) {
        for (auto c : ghz::all_contexts()) {
            r.add(fmt::format("  {}: {}", c.str(), report.count(c)));
        }
    }
    if (report.threshold_sensitive) {
        r.add(fmt::format("threshold {:g} is at or above a nonzero probability; verdicts are "
                          "threshold-sensitive",
                          report.threshold));
    }
    return r;
}

Report cmd_ghz_build(const Options &o, std::ostream &out) {
    Report r{"ghz build", Status::Pass, {}, json::object(), {}};
    auto concrete = ghz::build_concrete_model();
    auto text = serialize_document(concrete.document);
    const auto &model = concrete.scenario.model();
    r.payload["points"] = model.size();
    r.payload["histories"] = model.histories().size();
    r.add(fmt::format("points: {}, histories: {}", model.size(), model.histories().size()));
    if (o.output.empty()) {
        out << text;
        return r;
    }
    std::ofstream file(o.output, std::ios::binary);
    if (!(file << text)) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("cannot write '{}'", o.output));
    }
    r.payload["output"] = o.output;
    r.add("written: " + o.output);
    return r;
}

Report cmd_check_cc(const Options &o) {
    Report r{"check-cc", Status::Pass, {}, json::object(), {}};
    auto scenario = load_scenario(o.file);
    const auto &model = scenario.model();

    std::optional<std::vector<std::string>> names;
    if (!o.vector.empty()) {
        names = split_list(o.vector);
    }
    auto vector_of = [&](const NSpread &ns) {
        auto v = find_outcome_vector(ns, *names);
        if (!v) {
            throw Error(ErrorCode::UnknownReference,
                        fmt::format("'{}' is not an outcome vector of '{}'", o.vector, ns.name));
        }
        return *v;
    };

    if (o.nspreads.empty()) {
        throw Error(ErrorCode::BadFlag, "--nspread is required");
    }

    if (!o.search) {
        if (o.spread.empty() || !names || o.nspreads.size() != 1) {
            throw Error(ErrorCode::BadFlag, "check-cc needs --spread, one --nspread and --vector");
        }
        const auto &sigma = scenario.spread(o.spread);
        const auto &ns = scenario.nspread(o.nspreads.front());
        auto v = vector_of(ns);
        auto cc = check_common_cause(model, sigma, ns, v);
        r.payload["spread"] = o.spread;
        r.payload["nspread"] = ns.name;
        r.payload["vector"] = describe(ns, v);
        r.payload["cc1"] = condition_json(cc.cc1);
        r.payload["cc2"] = condition_json(cc.cc2);
        r.payload["cc3"] = condition_json(cc.cc3);
        r.payload["screening"] = cc.screening;
        r.payload["passes"] = cc.passes();
        for (auto [tag, c] : {std::pair{"CC1", &cc.cc1}, {"CC2", &cc.cc2}, {"CC3", &cc.cc3}}) {
            r.add(fmt::format("{}: {}", tag, c->holds ? "holds" : "fails"));
            for (const auto &w : c->witnesses) {
                r.add("  " + w);
            }
        }
        for (const auto &s : cc.screening) {
            r.add("screening: " + s);
        }
        r.status = cc.passes() ? Status::Pass : Status::Fail;
        r.add(cc.passes() ? "necessary conditions met (not sufficient for a common cause)"
                          : "not a common cause");
        return r;
    }

    if (!o.spread.empty()) {
        throw Error(ErrorCode::BadFlag, "--spread cannot be combined with --search");
    }
    std::vector<NSpread> nspreads;
    for (const auto &name : o.nspreads) {
        nspreads.push_back(scenario.nspread(name));
    }
    std::vector<TargetVector> targets;
    if (names) {
        if (nspreads.size() != 1) {
            throw Error(ErrorCode::BadFlag, "--vector needs exactly one --nspread");
        }
        auto v = vector_of(nspreads.front());
        if (consistent_unchecked(model, {}, terms(nspreads.front(), v))) {
            throw Error(ErrorCode::NotInconsistencyType,
                        fmt::format("{} is consistent", describe(nspreads.front(), v)));
        }
        targets.push_back(TargetVector{0, v});
    } else {
        targets = inconsistent_targets(model, nspreads);
    }
    auto found = search_common_causes(model, nspreads, targets, o.exec());
    std::vector<std::string> passing;
    for (const auto &s : found.passing) {
        passing.push_back(s.name);
    }
    json target_list = json::array();
    for (const auto &t : targets) {
        target_list.push_back(
            {{"nspread", nspreads[t.nspread].name}, {"vector", describe(nspreads[t.nspread], t.vector)}});
    }
    r.payload["candidates"] = found.candidates;
    r.payload["passing"] = passing;
    r.payload["vacuous"] = found.vacuous;
    r.payload["targets"] = target_list;
    r.add(fmt::format("atomic candidates: {}, targets: {}, passing: {}", found.candidates,
                      targets.size(), passing.size()));
    for (const auto &p : passing) {
        r.add("  " + p);
    }
    if (found.vacuous) {
        r.add("no inconsistent target vectors; every candidate passes vacuously");
    }
    return r;
}

bool wants_json(const std::vector<std::string> &args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--format=json" || (args[i] == "--format" && i + 1 < args.size() &&
                                           args[i + 1] == "json")) {
            return true;
        }
    }
    return false;
}

int emit_error(const std::string &command, const Error &e, bool json_mode, std::ostream &out,
               std::ostream &err) {
    auto r = error_report(command, e);
    if (json_mode) {
        out << render_json(r);
    } else {
        err << "error: " << e.what() << "\n";
    }
    return kExitInput;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Finite branching space-time models and the GHZ no-common-cause check", "bstghz"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--serial", o.serial, "Run searches on the serial reference kernels");

    auto *validate = app.add_subcommand("validate", "Check postulates, spreads and grades");
    validate->add_option("file", o.file)->required();
    auto *histories = app.add_subcommand("histories", "List the histories of a model");
    histories->add_option("file", o.file)->required();

    auto *ghz_cmd = app.add_subcommand("ghz", "Three-station GHZ scenario");
    ghz_cmd->require_subcommand(1);
    auto *build = ghz_cmd->add_subcommand("build", "Emit the concrete GHZ model document");
    build->add_option("--output,-o", o.output, "Write to this file instead of stdout");
    auto *refute = ghz_cmd->add_subcommand("refute", "Sweep all candidate profiles");
    refute->add_option("--contexts", o.contexts, "Comma-separated contexts")->capture_default_str();
    refute->add_flag("--trace", o.trace, "Emit the reductio trace");
    refute->add_option("--limit", o.limit, "Witnesses to report")->capture_default_str();
    auto *values = ghz_cmd->add_subcommand("values", "Non-contextual value assignments");
    values->add_option("--constraints", o.constraints, "e.g. xyy:+,yxy:+,yyx:+,xxx:-");
    values->add_option("--limit", o.limit, "Witnesses to report")->capture_default_str();
    auto *contextual = ghz_cmd->add_subcommand("contextual", "Context-indexed assignments");
    contextual->add_option("--constraints", o.constraints, "e.g. xyy:+,yxy:+,yyx:+,xxx:-");
    contextual->add_option("--limit", o.limit, "Witnesses to report")->capture_default_str();
    auto *oracle = ghz_cmd->add_subcommand("oracle", "Eigenvalues, probabilities, discrepancies");
    oracle->add_option("--context", o.context, "Restrict probabilities to one context");
    oracle->add_option("--threshold", o.threshold, "Probability treated as possible")
        ->capture_default_str();

    auto *check_cc = app.add_subcommand("check-cc", "Common-cause conditions CC1-CC3");
    check_cc->add_option("file", o.file)->required();
    check_cc->add_option("--spread", o.spread, "Candidate spread");
    check_cc->add_option("--nspread", o.nspreads, "N-spread (repeatable with --search)");
    check_cc->add_option("--vector", o.vector, "Outcome names, comma-separated");
    check_cc->add_flag("--search", o.search, "Scan atomic candidate spreads");

    const bool json_mode = wants_json(args);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError &e) {
        return emit_error("bstghz", Error(ErrorCode::BadFlag, e.what()), json_mode, out, err);
    }

    std::string command;
    for (auto *sub = app.get_subcommands().front(); sub != nullptr;) {
        command += (command.empty() ? "" : " ") + sub->get_name();
        auto subs = sub->get_subcommands();
        sub = subs.empty() ? nullptr : subs.front();
    }

    try {
        Report report;
        if (validate->parsed()) {
            report = cmd_validate(o);
        } else if (histories->parsed()) {
            report = cmd_histories(o);
        } else if (build->parsed()) {
            report = cmd_ghz_build(o, out);
            if (o.output.empty()) {
                return kExitPass;
            }
        } else if (refute->parsed()) {
            report = cmd_ghz_refute(o);
        } else if (values->parsed()) {
            report = cmd_ghz_values(o);
        } else if (contextual->parsed()) {
            report = cmd_ghz_contextual(o);
        } else if (oracle->parsed()) {
            report = cmd_ghz_oracle(o);
        } else {
            report = cmd_check_cc(o);
        }
        out << (o.format == "json" ? render_json(report) : render_text(report));
        return exit_code(report);
    } catch (const Error &e) {
        return emit_error(command, e, o.format == "json", out, err);
    }
}

}  // namespace bst::cli
