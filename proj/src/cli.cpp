//  Copyright 2026 The Ambiguity Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include "ambiguity/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "ambiguity/json_io.hpp"
#include "ambiguity/random.hpp"

namespace ambiguity {

namespace {

std::string render_assignment(const json& a) {
  std::string s;
  for (const auto& [k, v] : a.items()) {
    if (!s.empty()) s += ",";
    s += k + "=" + v.get<std::string>();
  }
  return s.empty() ? "(empty)" : s;
}

std::string render_measure_text(const ParamProbMeasure& mu) {
  std::ostringstream os;
  os << mu.setting_count() << " settings x " << mu.atom_count() << " atoms\n";
  for (std::size_t k = 0; k < mu.setting_count(); ++k) {
    os << "  " << render_assignment(json(mu.settings()[k])) << " :";
    for (std::size_t a = 0; a < mu.atom_count(); ++a)
      os << " " << mu.value(k, a);
    os << "\n";
  }
  return os.str();
}

std::string render_domain_text(const json& j) {
  std::ostringstream os;
  const char* key = j.contains("knobs") ? "knobs" : "detectors";
  const char* label_key = j.contains("knobs") ? "settings" : "outcomes";
  if (j[key].empty()) return "(empty domain)\n";
  for (const auto& f : j[key]) {
    os << "  " << f["name"].get<std::string>() << ":";
    for (const auto& l : f[label_key]) os << " " << l.get<std::string>();
    os << "\n";
  }
  return os.str();
}

json parse_inline_or_file(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    try {
      return json::parse(arg);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
  }
  return load_json_file(arg);
}

struct Output {
  std::string path;       // empty: stdout
  std::string format = "json";

  int emit(std::ostream& out, const json& report,
           const std::string& text) const {
    std::string body = format == "json" ? dump_canonical(report) : text;
    if (path.empty()) {
      out << body;
    } else {
      std::ofstream f(path);
      if (!f) fail(ErrorCode::InvalidInput, "cannot write '" + path + "'");
      f << body;
    }
    return 0;
  }
};

KnobDomain subdomain_by_names(const KnobDomain& full, const std::string& csv) {
  std::vector<Knob> knobs;
  std::stringstream ss(csv);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    if (!full.has(name))
      fail(ErrorCode::InvalidInput, "no knob named '" + name + "'");
    knobs.push_back(full.factor(name));
  }
  return KnobDomain(std::move(knobs));
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("AMBIGUITY_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      fail(ErrorCode::InvalidInput, "AMBIGUITY_SEED is not a number");
    }
  }
  return flag_seed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "Finite-scale toolkit for two-part quantum descriptions: statements of "
      "results (probability tables over knob settings) and their many "
      "explanations (states plus detection operators)."};
  app.require_subcommand(1);

  Output output;
  app.add_option("--out", output.path, "write the report to a file");
  app.add_option("--format", output.format, "report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::uint64_t seed = 12345;
  app.add_option("--seed", seed,
                 "seed for randomized checks (AMBIGUITY_SEED overrides)");

  double eps_norm = defaults::eps_norm;
  app.add_option("--eps-norm", eps_norm,
                 "row normalization tolerance for measure inputs")
      ->capture_default_str();

  // one deferred action per subcommand; parse picks exactly one
  std::function<int()> action;

  // ---- lattice ----------------------------------------------------------
  auto* lattice = app.add_subcommand(
      "lattice", "join, meet, difference and order of knob/detector domains");
  lattice->require_subcommand(1);
  static const char* kLatticeOps[] = {"join", "meet", "diff", "leq"};
  static const char* kLatticeHelp[] = {
      "domain with the union of the two factor sets",
      "domain with the factors the two domains share",
      "factors of the first domain that are not in the second",
      "whether every factor of the first domain is in the second"};
  for (int i = 0; i < 4; ++i) {
    auto* sub = lattice->add_subcommand(kLatticeOps[i], kLatticeHelp[i]);
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    sub->add_option("a", *a, "first domain JSON file")->required();
    sub->add_option("b", *b, "second domain JSON file")->required();
    std::string op = kLatticeOps[i];
    sub->callback([&, a, b, op]() {
      action = [&, a, b, op]() {
        json ja = load_json_file(*a);
        json jb = load_json_file(*b);
        bool knobs = ja.contains("knobs");
        if (knobs != jb.contains("knobs"))
          fail(ErrorCode::InvalidInput,
               "cannot mix a knob domain with a detector domain");
        auto run = [&](const auto& da, const auto& db) -> int {
          if (op == "leq") {
            bool v = leq(da, db);
            return output.emit(out, json{{"leq", v}},
                               std::string(v ? "true" : "false") + "\n");
          }
          auto result = op == "join"   ? join(da, db)
                        : op == "meet" ? meet(da, db)
                                       : diff(da, db);
          json jr = result;
          return output.emit(out, jr, render_domain_text(jr));
        };
        return knobs ? run(parse_knob_domain(ja), parse_knob_domain(jb))
                     : run(parse_detector_domain(ja), parse_detector_domain(jb));
      };
    });
  }

  // ---- metdev ------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "metdev",
        "metric deviation of two statements of results sharing a knob domain: "
        "sup over setting pairs of |D(mu(k1),mu(k2)) - D'(mu'(k1),mu'(k2))|");
    auto mu_path = std::make_shared<std::string>();
    auto mu2_path = std::make_shared<std::string>();
    sub->add_option("--mu", *mu_path, "first measure JSON file")->required();
    sub->add_option("--mu2", *mu2_path, "second measure JSON file")->required();
    sub->callback([&, mu_path, mu2_path]() {
      action = [&, mu_path, mu2_path]() {
        double v = metdev_ppm(parse_measure(load_json_file(*mu_path), eps_norm),
                              parse_measure(load_json_file(*mu2_path), eps_norm));
        std::ostringstream os;
        os << "metric deviation: " << v << "\n";
        return output.emit(out, json{{"metdev", v}}, os.str());
      };
    });
  }

  // ---- topology ----------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "topology",
        "partition of the knob domain into settings with equal outcome "
        "distributions, with the induced distances between classes");
    auto mu_path = std::make_shared<std::string>();
    auto eps = std::make_shared<double>(defaults::eps_eq);
    sub->add_option("--mu", *mu_path, "measure JSON file")->required();
    sub->add_option("--eps-eq", *eps, "row-equality tolerance")
        ->capture_default_str();
    sub->callback([&, mu_path, eps]() {
      action = [&, mu_path, eps]() {
        auto p = induced_partition(parse_measure(load_json_file(*mu_path), eps_norm), *eps);
        std::ostringstream os;
        os << p.classes.size() << " classes\n";
        for (std::size_t c = 0; c < p.classes.size(); ++c) {
          os << "  class " << c << ":";
          for (const auto& s : p.classes[c])
            os << " {" << render_assignment(json(s)) << "}";
          os << "\n";
        }
        if (p.chain_ambiguity)
          os << "note: some cross-class pair is closer than 2*eps\n";
        return output.emit(out, json(p), os.str());
      };
    });
  }

  // ---- marginalize ---------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "marginalize",
        "restrict a statement of results to fewer detectors by summing over "
        "the dropped detectors' outcomes");
    auto mu_path = std::make_shared<std::string>();
    auto drop_csv = std::make_shared<std::string>();
    sub->add_option("--mu", *mu_path, "measure JSON file")->required();
    sub->add_option("--drop", *drop_csv, "comma-separated detector names")
        ->required();
    sub->callback([&, mu_path, drop_csv]() {
      action = [&, mu_path, drop_csv]() {
        std::set<std::string> drop;
        std::stringstream ss(*drop_csv);
        std::string name;
        while (std::getline(ss, name, ','))
          if (!name.empty()) drop.insert(name);
        auto reduced = marginalize(parse_measure(load_json_file(*mu_path), eps_norm), drop);
        return output.emit(out, json(reduced), render_measure_text(reduced));
      };
    });
  }

  // ---- explain -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "explain",
        "construct one canonical explanation of the given results: "
        "measurement (trivial state, structure in the detection operators), "
        "state (orthogonal states per setting class), or sqrt (amplitudes "
        "sqrt(mu) against a fixed basis)");
    auto mu_path = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>();
    auto state_knobs = std::make_shared<std::string>();
    auto eps = std::make_shared<double>(defaults::eps_eq);
    sub->add_option("--mu", *mu_path, "measure JSON file")->required();
    sub->add_option("--method", *method, "construction to use")
        ->check(CLI::IsMember({"measurement", "state", "sqrt"}))
        ->required();
    sub->add_option("--state-knobs", *state_knobs,
                    "comma-separated knob names that control the state "
                    "(method=state only)");
    sub->add_option("--eps-eq", *eps, "row-equality tolerance")
        ->capture_default_str();
    sub->callback([&, mu_path, method, state_knobs, eps]() {
      action = [&, mu_path, method, state_knobs, eps]() {
        auto mu = parse_measure(load_json_file(*mu_path), eps_norm);
        Explanation e = [&]() {
          if (*method == "measurement") return explain_all_in_measurement(mu);
          if (*method == "sqrt") return explain_sqrt(mu);
          std::optional<Factorization> f;
          if (!state_knobs->empty()) {
            KnobDomain a = subdomain_by_names(mu.knob_domain(), *state_knobs);
            f = Factorization{a, diff(mu.knob_domain(), a)};
          }
          return explain_all_in_state(mu, f, *eps);
        }();
        std::ostringstream os;
        os << "dim " << e.dim() << " explanation over "
           << e.settings().size() << " settings; use --format json for the "
           << "operators\n";
        return output.emit(out, json(e), os.str());
      };
    });
  }

  // ---- verify ---------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "verify",
        "check that an explanation reproduces the given results through the "
        "trace rule, within a tolerance (exit 3 when it does not)");
    auto mu_path = std::make_shared<std::string>();
    auto expl_path = std::make_shared<std::string>();
    auto tol = std::make_shared<double>(defaults::verify_tol);
    sub->add_option("--mu", *mu_path, "measure JSON file")->required();
    sub->add_option("--expl", *expl_path, "explanation JSON file")->required();
    sub->add_option("--tol", *tol, "acceptance tolerance")
        ->capture_default_str();
    sub->callback([&, mu_path, expl_path, tol]() {
      action = [&, mu_path, expl_path, tol]() {
        auto r = verify_explains(parse_explanation(load_json_file(*expl_path)),
                                 parse_measure(load_json_file(*mu_path), eps_norm), *tol);
        std::ostringstream os;
        os << (r.ok ? "ok" : "MISMATCH") << ": uniform distance " << r.metric
           << " (tol " << r.tol << "), worst entry at {"
           << render_assignment(json(r.argmax_setting)) << "} / {"
           << render_assignment(json(r.argmax_atom)) << "}\n";
        int rc = output.emit(out, json(r), os.str());
        return rc != 0 ? rc : (r.ok ? 0 : 3);
      };
    });
  }

  // ---- check-prop47 -----------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "check-prop47",
        "check whether metrically inequivalent state assignments explaining "
        "these results are guaranteed: they are, unless every pair of "
        "state-knob settings is separated with certainty by some "
        "measurement-knob setting");
    auto mu_path = std::make_shared<std::string>();
    auto state_knobs = std::make_shared<std::string>();
    auto eps = std::make_shared<double>(defaults::eps_eq);
    sub->add_option("--mu", *mu_path, "measure JSON file")->required();
    sub->add_option("--state-knobs", *state_knobs,
                    "comma-separated knob names that control the state")
        ->required();
    sub->add_option("--eps-eq", *eps, "distance-one tolerance")
        ->capture_default_str();
    sub->callback([&, mu_path, state_knobs, eps]() {
      action = [&, mu_path, state_knobs, eps]() {
        auto mu = parse_measure(load_json_file(*mu_path), eps_norm);
        KnobDomain a = subdomain_by_names(mu.knob_domain(), *state_knobs);
        Factorization f{a, diff(mu.knob_domain(), a)};
        auto c = check_inequivalence_condition(mu, f, *eps);
        std::ostringstream os;
        if (c.possible) {
          os << "inequivalent explanations possible; witness pair {"
             << render_assignment(json(c.witness->first)) << "} vs {"
             << render_assignment(json(c.witness->second))
             << "} separated at most " << c.witness_separation << "\n";
        } else {
          os << "every state-setting pair is perfectly separated; the "
             << "construction does not apply\n";
        }
        return output.emit(out, json(c), os.str());
      };
    });
  }

  // ---- trace-rule -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "trace-rule",
        "statement of results implied by an explanation: mu(k, atom) = "
        "Tr[rho(k) M(k, atom)]");
    auto expl_path = std::make_shared<std::string>();
    sub->add_option("--expl", *expl_path, "explanation JSON file")->required();
    sub->callback([&, expl_path]() {
      action = [&, expl_path]() {
        auto mu = trace_rule(parse_explanation(load_json_file(*expl_path)));
        return output.emit(out, json(mu), render_measure_text(mu));
      };
    });
  }

  // ---- helstrom ------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "helstrom",
        "minimum-error decision measurement between two states: projector "
        "onto the positive eigenspace of their difference, plus complement; "
        "error floor (1 - trace distance)/2");
    auto r1 = std::make_shared<std::string>();
    auto r2 = std::make_shared<std::string>();
    sub->add_option("--rho1", *r1, "first density matrix JSON file")->required();
    sub->add_option("--rho2", *r2, "second density matrix JSON file")
        ->required();
    sub->callback([&, r1, r2]() {
      action = [&, r1, r2]() {
        DensityOperator a = parse_density(parse_inline_or_file(*r1));
        DensityOperator b = parse_density(parse_inline_or_file(*r2));
        BinaryPovm povm = helstrom_povm(a, b);
        double dist = trace_distance(a, b);
        double perr = helstrom_error(a, b);
        json report = povm;
        report["traceDistance"] = dist;
        report["errorProbability"] = perr;
        std::ostringstream os;
        os << "trace distance " << dist << ", error floor " << perr << "\n";
        return output.emit(out, report, os.str());
      };
    });
  }

  // ---- bound -----------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "bound",
        "check the constraint results place on an explanation: the row "
        "distance between two settings never exceeds the trace distance of "
        "their states plus the largest detection-operator gap (exit 3 on "
        "violation)");
    auto expl_path = std::make_shared<std::string>();
    auto k1_arg = std::make_shared<std::string>();
    auto k2_arg = std::make_shared<std::string>();
    auto random_trials = std::make_shared<std::size_t>(0);
    sub->add_option("--expl", *expl_path, "explanation JSON file")->required();
    sub->add_option("--k1", *k1_arg, "first setting (inline JSON or file)");
    sub->add_option("--k2", *k2_arg, "second setting (inline JSON or file)");
    sub->add_option("--random", *random_trials,
                    "also check this many random explanations over the same "
                    "domains (seeded)");
    sub->callback([&, expl_path, k1_arg, k2_arg, random_trials]() {
      action = [&, expl_path, k1_arg, k2_arg, random_trials]() {
        Explanation e = parse_explanation(load_json_file(*expl_path));
        json checks = json::array();
        bool all_hold = true;
        auto check_pair = [&](const Explanation& expl, const Setting& s1,
                              const Setting& s2, const char* source) {
          BoundCheck b = results_bound_check(expl, s1, s2);
          json item = b;
          item["k1"] = s1;
          item["k2"] = s2;
          item["source"] = source;
          checks.push_back(std::move(item));
          all_hold = all_hold && b.holds;
        };
        if (!k1_arg->empty() || !k2_arg->empty()) {
          if (k1_arg->empty() || k2_arg->empty())
            fail(ErrorCode::InvalidInput, "--k1 and --k2 go together");
          check_pair(e, parse_setting(parse_inline_or_file(*k1_arg)),
                     parse_setting(parse_inline_or_file(*k2_arg)), "given");
        } else {
          const auto& settings = e.settings();
          for (std::size_t i = 0; i < settings.size(); ++i)
            for (std::size_t j = i + 1; j < settings.size(); ++j)
              check_pair(e, settings[i], settings[j], "given");
        }
        if (*random_trials > 0) {
          Rng rng(effective_seed(seed));
          for (std::size_t t = 0; t < *random_trials; ++t) {
            Explanation r = random_explanation(rng, e.dim(), e.knob_domain(),
                                               e.detector_domain());
            const auto& settings = r.settings();
            for (std::size_t i = 0; i < settings.size(); ++i)
              for (std::size_t j = i + 1; j < settings.size(); ++j)
                check_pair(r, settings[i], settings[j], "random");
          }
        }
        json report{{"checks", std::move(checks)}, {"holds", all_hold}};
        std::ostringstream os;
        os << report["checks"].size() << " pairs checked, "
           << (all_hold ? "all hold" : "VIOLATED") << "\n";
        int rc = output.emit(out, report, os.str());
        return rc != 0 ? rc : (all_hold ? 0 : 3);
      };
    });
  }

  // ---- cycle ------------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "cycle",
        "expand the knob domain with a copy of itself plus a binary switch, "
        "envelop two explanations of the same results, install the decision "
        "measurement at b1, and compare the conflicting extended results; "
        "with --rounds > 1, iterate with canonical explanations");
    auto mu_path = std::make_shared<std::string>();
    auto e1_path = std::make_shared<std::string>();
    auto e2_path = std::make_shared<std::string>();
    auto pair_args = std::make_shared<std::vector<std::string>>();
    auto rounds = std::make_shared<std::size_t>(1);
    auto reject = std::make_shared<std::string>("keep-first");
    auto max_settings =
        std::make_shared<std::size_t>(defaults::max_extended_settings);
    auto tol_conflict = std::make_shared<double>(defaults::tol_conflict);
    sub->add_option("--mu", *mu_path, "measure JSON file")->required();
    sub->add_option("--expl", *e1_path, "first explanation JSON file");
    sub->add_option("--expl2", *e2_path, "second explanation JSON file");
    sub->add_option("--pair", *pair_args,
                    "two settings (inline JSON or files) to discriminate")
        ->expected(2);
    sub->add_option("--rounds", *rounds, "number of rounds")
        ->capture_default_str();
    sub->add_option("--reject", *reject,
                    "which extended statement survives between rounds")
        ->check(CLI::IsMember({"keep-first", "keep-second"}))
        ->capture_default_str();
    sub->add_option("--max-settings", *max_settings,
                    "growth cap on the expanded domain")
        ->capture_default_str();
    sub->add_option("--tol-conflict", *tol_conflict,
                    "distance gap that counts as a conflict")
        ->capture_default_str();
    sub->callback([&, mu_path, e1_path, e2_path, pair_args, rounds, reject,
                   max_settings, tol_conflict]() {
      action = [&, mu_path, e1_path, e2_path, pair_args, rounds, reject,
                max_settings, tol_conflict]() {
        auto mu = parse_measure(load_json_file(*mu_path), eps_norm);
        auto render = [&](const CycleReport& r) {
          std::ostringstream os;
          os << "pair {" << render_assignment(json(r.k1)) << "} vs {"
             << render_assignment(json(r.k2)) << "}: distances " << r.distance1
             << " / " << r.distance2 << ", metric deviation " << r.metdev
             << (r.conflict ? " -> conflict\n" : " -> no conflict\n");
          return os.str();
        };
        if (*rounds == 1 && !e1_path->empty()) {
          if (e2_path->empty())
            fail(ErrorCode::InvalidInput, "--expl needs --expl2");
          CycleOptions opts;
          opts.tol_conflict = *tol_conflict;
          if (!pair_args->empty())
            opts.pair = {parse_setting(parse_inline_or_file((*pair_args)[0])),
                         parse_setting(parse_inline_or_file((*pair_args)[1]))};
          CycleReport r =
              run_cycle(mu, parse_explanation(load_json_file(*e1_path)),
                        parse_explanation(load_json_file(*e2_path)), opts);
          return output.emit(out, json(r), render(r));
        }
        if (!e1_path->empty() || !e2_path->empty()) {
          err << "error: --expl/--expl2 apply to a single round; iterated "
                 "rounds build the canonical explanations\n";
          return 1;
        }
        IterateOptions opts;
        opts.max_settings = *max_settings;
        opts.tol_conflict = *tol_conflict;
        auto reports = iterate_cycle(mu,
                                     *reject == "keep-first"
                                         ? RejectRule::KeepFirst
                                         : RejectRule::KeepSecond,
                                     *rounds, opts);
        std::string text;
        for (const auto& r : reports) text += render(r);
        return output.emit(out, json(reports), text);
      };
    });
  }

  // ---- bb84 --------------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "bb84",
        "single-qubit BB84 demonstration: the standard explanation's "
        "minimum-error floor for cross-basis pairs, and a metrically "
        "inequivalent explanation of the identical results under which every "
        "distinct pair is read without error");
    sub->callback([&]() {
      action = [&]() {
        BB84Scenario s = bb84_build();
        auto floor = bb84_security_floor(s);
        BB84Alternative alt = bb84_insecure_alternative(s);
        json report{{"mu", s.mu},
                    {"standard", s.standard},
                    {"standardErrors", floor},
                    {"alternative", alt.explanation},
                    {"alternativeErrors", alt.errors},
                    {"alternativeVerification", alt.verification},
                    {"condition", alt.condition},
                    {"metdevDensity", alt.metdev_density_value}};
        std::ostringstream os;
        os << "pair      standard D  standard err  alternative D  alternative err\n";
        for (std::size_t i = 0; i < floor.size(); ++i) {
          os << floor[i].alice1 << " vs " << floor[i].alice2 << "  "
             << floor[i].trace_distance << "  " << floor[i].helstrom_error
             << "  " << alt.errors[i].trace_distance << "  "
             << alt.errors[i].helstrom_error << "\n";
        }
        os << "both explanations reproduce the same table (max deviation "
           << alt.verification.max_entry_dev << ")\n";
        return output.emit(out, report, os.str());
      };
    });
  }

  // global options may follow the chosen verb
  for (auto* sub : app.get_subcommands(nullptr)) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    return action ? action() : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ambiguity
