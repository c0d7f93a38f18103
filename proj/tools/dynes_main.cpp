#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "dynes/dot.hpp"
#include "dynes/jsonio.hpp"
#include "dynes/parse.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitClaimFail = 1;
constexpr int kExitError = 2;
constexpr int kExitNotEqual = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

dynes::Structure load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return dynes::parse_structure(buf.str());
  } catch (const dynes::ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

void emit(const dynes::json& j) { std::cout << j.dump(2) << "\n"; }

int run(int argc, char** argv) {
  using namespace dynes;
  CLI::App app{"dynes: dynamic-causality event structures — semantics, "
               "translations, equivalences and exhaustive searches"};
  app.require_subcommand(1);

  std::string file, file2, mode = "trace", semantics = "early", to, kind = "trace";
  std::string corpus_name;
  std::vector<std::string> claim_ids;
  std::string search_family, search_events;
  bool use_json = false, use_dot = false, all_claims = false, list_corpus = false;
  bool check_corpus = false;
  std::uint64_t max_structures = 10'000'000;
  double max_seconds = 120.0;

  auto* validate_cmd = app.add_subcommand("validate", "check well-formedness");
  validate_cmd->add_option("file", file)->required();
  validate_cmd->add_flag("--json", use_json);

  auto* traces_cmd = app.add_subcommand("traces", "list all traces");
  traces_cmd->add_option("file", file)->required();
  traces_cmd->add_flag("--json", use_json);

  auto* configs_cmd = app.add_subcommand("configs", "list configurations");
  configs_cmd->add_option("file", file)->required();
  configs_cmd->add_option("--mode", mode, "trace|step");
  configs_cmd->add_flag("--json", use_json);

  auto* trans_cmd = app.add_subcommand("transitions", "configuration step graph");
  trans_cmd->add_option("file", file)->required();
  trans_cmd->add_flag("--json", use_json);
  trans_cmd->add_flag("--dot", use_dot);

  auto* states_cmd = app.add_subcommand("states", "DCES state graph");
  states_cmd->add_option("file", file)->required();
  states_cmd->add_flag("--json", use_json);
  states_cmd->add_flag("--dot", use_dot);

  auto* posets_cmd = app.add_subcommand("posets", "poset families");
  posets_cmd->add_option("file", file)->required();
  posets_cmd->add_option("--semantics", semantics,
                         "early|liberal|bsat|minimal|late|precedence");
  posets_cmd->add_flag("--json", use_json);

  auto* translate_cmd = app.add_subcommand("translate", "translate between families");
  translate_cmd->add_option("file", file)->required();
  translate_cmd->add_option("--to", to, "rces|des|ses|dces")->required();
  translate_cmd->add_flag("--json", use_json);

  auto* equiv_cmd = app.add_subcommand("equiv", "compare two structures");
  equiv_cmd->add_option("file", file)->required();
  equiv_cmd->add_option("file2", file2)->required();
  equiv_cmd->add_option("--kind", kind,
                        "trace|config|transition|state|poset[:mode]");
  equiv_cmd->add_flag("--json", use_json);

  auto* search_cmd = app.add_subcommand(
      "search", "search a family exhaustively for an equivalent structure");
  search_cmd->add_option("file", file, "target structure")->required();
  search_cmd->add_option("--family", search_family, "SES|GES|DCES|DES|BES|EBES")
      ->required();
  search_cmd->add_option("--events", search_events, "comma-separated alphabet")
      ->required();
  search_cmd->add_option("--kind", kind);
  search_cmd->add_option("--max-structures", max_structures);
  search_cmd->add_option("--max-seconds", max_seconds);
  search_cmd->add_flag("--json", use_json);

  auto* verify_cmd = app.add_subcommand("verify", "replay registered claims");
  verify_cmd->add_option("--claim", claim_ids, "claim id (repeatable)");
  verify_cmd->add_flag("--all", all_claims);
  verify_cmd->add_flag("--json", use_json);

  auto* corpus_cmd = app.add_subcommand("corpus", "bundled example structures");
  corpus_cmd->add_option("name", corpus_name);
  corpus_cmd->add_flag("--list", list_corpus);
  corpus_cmd->add_flag("--check", check_corpus);
  corpus_cmd->add_flag("--json", use_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (validate_cmd->parsed()) {
    Structure s = load_file(file);
    if (use_json) {
      emit(validation_json(s));
    } else {
      ValidationReport r = validate(s);
      if (r.ok) {
        std::cout << "ok\n";
      } else {
        for (const auto& v : r.violations)
          std::cout << "violation " << v.rule << ": " << v.detail << "\n";
      }
    }
    return kExitOk;
  }

  if (traces_cmd->parsed()) {
    Structure s = load_file(file);
    if (use_json) {
      emit(traces_json(s));
    } else {
      const Alphabet& al = alphabet_of(s);
      for (const auto& t : traces(s).seqs) {
        if (t.empty()) {
          std::cout << "<empty>\n";
          continue;
        }
        for (std::size_t i = 0; i < t.size(); ++i)
          std::cout << (i ? "." : "") << al.name(t[i]);
        std::cout << "\n";
      }
    }
    return kExitOk;
  }

  if (configs_cmd->parsed()) {
    Structure s = load_file(file);
    if (mode != "trace" && mode != "step")
      throw UsageError("--mode must be trace or step");
    ConfigMode m = mode == "trace" ? ConfigMode::Trace : ConfigMode::Step;
    if (use_json) {
      emit(configs_json(s, m));
    } else {
      const Alphabet& al = alphabet_of(s);
      for (EventSet c : configurations(s, m))
        std::cout << al.set_to_string(c) << "\n";
    }
    return kExitOk;
  }

  if (trans_cmd->parsed()) {
    Structure s = load_file(file);
    if (use_dot) {
      std::cout << transition_graph_dot(s);
    } else if (use_json) {
      emit(transitions_json(s));
    } else {
      const Alphabet& al = alphabet_of(s);
      for (const auto& [x, y] : transition_graph(s).edges)
        std::cout << al.set_to_string(x) << " -> " << al.set_to_string(y) << "\n";
    }
    return kExitOk;
  }

  if (states_cmd->parsed()) {
    Structure s = load_file(file);
    if (family_of(s) != Family::Dces)
      throw UsageError("states: " + file + " is not a DCES");
    if (use_dot) {
      std::cout << state_graph_dot(s);
    } else if (use_json) {
      emit(states_json(s));
    } else {
      const Alphabet& al = alphabet_of(s);
      StateGraph g = dces_state_graph(std::get<Dces>(s));
      for (const auto& [a, b] : g.edges) {
        auto text = [&](const DcesState& st) {
          std::string out = al.set_to_string(st.config);
          for (EventId e = 0; e < al.size(); ++e)
            if (!contains(st.config, e) && st.need[e])
              out += " cs(" + al.name(e) + ")=" + al.set_to_string(st.need[e]);
          return out;
        };
        std::cout << text(g.states[a]) << " -> " << text(g.states[b]) << "\n";
      }
    }
    return kExitOk;
  }

  if (posets_cmd->parsed()) {
    Structure s = load_file(file);
    auto m = poset_mode_from_name(semantics);
    if (!m) throw UsageError("unknown poset semantics '" + semantics + "'");
    if (use_json) {
      emit(posets_json(s, *m));
    } else {
      for (const Poset& p : posets(s, *m)) {
        std::cout << "poset {";
        for (std::size_t i = 0; i < p.events.size(); ++i)
          std::cout << (i ? "," : "") << p.events[i];
        std::cout << "}";
        for (std::size_t i = 0; i < p.events.size(); ++i)
          for_each_event(p.below[i], [&](EventId j) {
            if (static_cast<std::size_t>(j) != i)
              std::cout << " " << p.events[j] << "<" << p.events[i];
          });
        std::cout << "\n";
      }
    }
    return kExitOk;
  }

  if (translate_cmd->parsed()) {
    Structure s = load_file(file);
    Structure out = [&]() -> Structure {
      if (to == "rces") return Structure{to_rces(s)};
      if (to == "des") {
        if (family_of(s) != Family::Ses) throw UsageError("--to des needs a SES");
        return Structure{ses_to_des(std::get<Ses>(s))};
      }
      if (to == "ses") {
        if (family_of(s) != Family::Des) throw UsageError("--to ses needs a DES");
        return Structure{des_to_ses(std::get<Des>(s))};
      }
      if (to == "dces") {
        if (family_of(s) == Family::Ebes)
          return Structure{ebes_to_dces(std::get<Ebes>(s))};
        return Structure{embed(s)};
      }
      throw UsageError("unknown translation target '" + to + "'");
    }();
    if (use_json)
      emit(result_json(out, "structure", structure_json(out)));
    else
      std::cout << serialize(out);
    return kExitOk;
  }

  if (equiv_cmd->parsed()) {
    Structure a = load_file(file);
    Structure b = load_file(file2);
    auto k = equiv_kind_from_name(kind);
    if (!k) throw UsageError("unknown equivalence kind '" + kind + "'");
    Verdict v = equivalent(a, b, *k);
    if (use_json) {
      emit(verdict_json(v, kind));
    } else if (v.equal) {
      std::cout << "equal\n";
    } else {
      std::cout << "not equal";
      if (v.witness)
        std::cout << ": " << v.witness->kind << " " << v.witness->text << " only in "
                  << (v.witness->side == "left" ? file : file2);
      std::cout << "\n";
    }
    return v.equal ? kExitOk : kExitNotEqual;
  }

  if (search_cmd->parsed()) {
    Structure target = load_file(file);
    auto fam = family_from_name(search_family);
    if (!fam) throw UsageError("unknown family '" + search_family + "'");
    auto k = equiv_kind_from_name(kind);
    if (!k) throw UsageError("unknown equivalence kind '" + kind + "'");
    std::vector<std::string> names;
    std::size_t i = 0;
    while (i <= search_events.size()) {
      std::size_t j = search_events.find(',', i);
      if (j == std::string::npos) j = search_events.size();
      if (j > i) names.push_back(search_events.substr(i, j - i));
      i = j + 1;
    }
    SearchSpec spec;
    spec.family = *fam;
    spec.alphabet = Alphabet(names);
    spec.max_structures = max_structures;
    spec.max_seconds = max_seconds;
    SearchOutcome out = find_match(spec, target, *k);
    if (use_json) {
      emit(outcome_json(out));
    } else {
      switch (out.status) {
        case SearchOutcome::Status::Found:
          std::cout << "Found after " << out.explored << " structures:\n"
                    << serialize(*out.found);
          break;
        case SearchOutcome::Status::ExhaustedNone:
          std::cout << "ExhaustedNone: no match among " << out.explored
                    << " structures\n";
          break;
        case SearchOutcome::Status::BudgetExceeded:
          std::cout << "BudgetExceeded after " << out.explored << " structures\n";
          break;
      }
    }
    return kExitOk;
  }

  if (verify_cmd->parsed()) {
    std::vector<std::string> ids = claim_ids;
    if (all_claims || ids.empty()) ids = dynes::claim_ids();
    std::vector<ClaimResult> results = verify_claims(ids);
    bool all_pass = true;
    if (use_json) {
      emit(claims_json(results));
      for (const auto& r : results) all_pass = all_pass && r.pass;
    } else {
      for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << ": " << r.evidence
                  << "\n";
        all_pass = all_pass && r.pass;
      }
    }
    return all_pass ? kExitOk : kExitClaimFail;
  }

  if (corpus_cmd->parsed()) {
    if (list_corpus || corpus_name.empty()) {
      for (const auto& e : corpus())
        std::cout << e.name << ": " << e.provenance << "\n";
      return kExitOk;
    }
    const ExampleEntry& e = load_example(corpus_name);
    if (check_corpus) {
      Structure s = e.structure();
      bool ok = true;
      for (const auto& f : e.facts) ok = ok && check_fact(s, f);
      std::cout << (ok ? "ok" : "FAILED") << ": " << e.name << " ("
                << e.facts.size() << " facts)\n";
      return ok ? kExitOk : kExitClaimFail;
    }
    if (use_json)
      emit(result_json(e.structure(), "structure", structure_json(e.structure())));
    else
      std::cout << e.text;
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const dynes::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const dynes::DynesError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitError;
  }
}
