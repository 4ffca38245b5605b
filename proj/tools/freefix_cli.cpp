#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <freefix/freefix.hpp>

namespace ff = freefix;
using nlohmann::json;

namespace {

struct Options {
  int rank = 0;
  std::string gens;
  std::string gensFile;
  std::string gens2;
  std::string gens2File;
  std::string word;
  std::vector<std::string> morphisms;
  std::vector<std::string> morphismFiles;
  int maxLen = 10;
  int fringeCap = 8;
  int retractionBound = 10;
  int maxIter = 8;
  std::string format = "text";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ff::ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<ff::Word> words_from_lines(const ff::Alphabet& a, const std::string& text) {
  std::vector<ff::Word> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    out.push_back(ff::parse_word(a, t));
  }
  return out;
}

std::vector<ff::Word> gens_from(const ff::Alphabet& a, const std::string& inlineGens,
                                const std::string& file, const char* what) {
  if (!inlineGens.empty() && !file.empty())
    throw ff::ParseError(std::string("give ") + what + " inline or as a file, not both");
  if (!file.empty()) return words_from_lines(a, read_file(file));
  if (inlineGens.empty()) throw ff::ParseError(std::string("missing ") + what);
  std::vector<ff::Word> out;
  std::istringstream in(inlineGens);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    std::string t = trimmed(piece);
    if (t.empty()) continue;
    out.push_back(ff::parse_word(a, t));
  }
  if (out.empty()) throw ff::ParseError(std::string("missing ") + what);
  return out;
}

std::vector<ff::Morphism> family_from(const ff::Alphabet& a, const Options& o) {
  std::vector<ff::Morphism> fam;
  for (const std::string& m : o.morphisms) fam.push_back(ff::parse_morphism(a, m));
  for (const std::string& f : o.morphismFiles)
    fam.push_back(ff::parse_morphism(a, read_file(f)));
  if (fam.empty()) throw ff::ParseError("missing --morphism");
  return fam;
}

ff::Morphism single_morphism(const ff::Alphabet& a, const Options& o, const char* cmd) {
  std::vector<ff::Morphism> fam = family_from(a, o);
  if (fam.size() != 1)
    throw ff::ParseError(std::string(cmd) + " needs exactly one --morphism");
  return fam[0];
}

void print_subgroup_text(std::ostream& os, const ff::SubgroupGraph& g, bool meta) {
  if (meta)
    os << "# vertices " << g.vertex_count() << " edges " << g.edge_count() << " rank "
       << g.rank() << '\n';
  std::vector<ff::Word> b = ff::basis(g);
  if (b.empty()) {
    os << "1\n";
    return;
  }
  for (const ff::Word& w : b) os << ff::to_string(w) << '\n';
}

json subgroup_json(const ff::SubgroupGraph& g) {
  json arr = json::array();
  for (const ff::Word& w : ff::basis(g)) arr.push_back(ff::to_string(w));
  return json{{"vertices", g.vertex_count()},
              {"edges", g.edge_count()},
              {"rank", g.rank()},
              {"basis", arr}};
}

json morphism_json(const ff::Morphism& m) {
  json arr = json::array();
  for (const ff::Word& w : m.images()) arr.push_back(ff::to_string(w));
  return arr;
}

void emit_graph(const Options& o, const ff::SubgroupGraph& g, bool meta) {
  if (o.format == "dot") {
    std::cout << ff::to_dot(g);
  } else if (o.format == "structured") {
    std::cout << subgroup_json(g).dump(2) << '\n';
  } else {
    print_subgroup_text(std::cout, g, meta);
  }
}

void emit_yesno(const Options& o, const char* key, bool value) {
  if (o.format == "structured")
    std::cout << json{{key, value}}.dump(2) << '\n';
  else
    std::cout << (value ? "yes" : "no") << '\n';
}

ff::SubgroupGraph graph_arg(const ff::Alphabet& a, const Options& o) {
  return ff::build_subgroup(a, gens_from(a, o.gens, o.gensFile, "--gens"));
}

ff::SubgroupGraph graph_arg2(const ff::Alphabet& a, const Options& o) {
  return ff::build_subgroup(a, gens_from(a, o.gens2, o.gens2File, "--gens2"));
}

int run_fold(const Options& o) {
  ff::Alphabet a(o.rank);
  emit_graph(o, graph_arg(a, o), true);
  return 0;
}

int run_basis(const Options& o) {
  ff::Alphabet a(o.rank);
  emit_graph(o, graph_arg(a, o), false);
  return 0;
}

int run_member(const Options& o) {
  ff::Alphabet a(o.rank);
  ff::SubgroupGraph g = graph_arg(a, o);
  ff::Word w = ff::parse_word(a, o.word);
  emit_yesno(o, "member", g.contains(w));
  return 0;
}

int run_intersect(const Options& o) {
  ff::Alphabet a(o.rank);
  emit_graph(o, ff::intersect(graph_arg(a, o), graph_arg2(a, o)), true);
  return 0;
}

int emit_members(const Options& o, const std::vector<ff::SubgroupGraph>& members) {
  if (o.format == "structured") {
    json arr = json::array();
    for (const ff::SubgroupGraph& m : members) arr.push_back(subgroup_json(m));
    std::cout << json{{"members", arr}}.dump(2) << '\n';
    return 0;
  }
  for (size_t i = 0; i < members.size(); ++i) {
    std::cout << "# member " << i << " vertices " << members[i].vertex_count() << " rank "
              << members[i].rank() << '\n';
    print_subgroup_text(std::cout, members[i], false);
  }
  return 0;
}

int run_fringe(const Options& o) {
  ff::Alphabet a(o.rank);
  return emit_members(o, ff::fringe(graph_arg(a, o), o.fringeCap).members);
}

int run_ae(const Options& o) {
  ff::Alphabet a(o.rank);
  return emit_members(o, ff::algebraic_extensions(graph_arg(a, o), o.fringeCap).members);
}

int run_freefactor(const Options& o) {
  ff::Alphabet a(o.rank);
  emit_yesno(o, "free_factor", ff::is_free_factor(graph_arg(a, o), graph_arg2(a, o)));
  return 0;
}

int run_stab(const Options& o) {
  ff::Alphabet a(o.rank);
  std::vector<ff::Word> tuple = gens_from(a, o.gens, o.gensFile, "--gens");
  std::vector<ff::Morphism> gens = ff::stabilizer_generators(a, tuple);
  if (o.format == "structured") {
    json arr = json::array();
    for (const ff::Morphism& m : gens) arr.push_back(morphism_json(m));
    std::cout << json{{"generators", arr}}.dump(2) << '\n';
    return 0;
  }
  std::cout << "# generators " << gens.size() << '\n';
  for (const ff::Morphism& m : gens) std::cout << ff::to_string(m) << '\n';
  return 0;
}

int run_fix(const Options& o) {
  ff::Alphabet a(o.rank);
  std::vector<ff::Morphism> fam = family_from(a, o);
  emit_graph(o, ff::fix_approx(a, fam, o.maxLen), true);
  return 0;
}

int run_stable_image(const Options& o) {
  ff::Alphabet a(o.rank);
  ff::StableImage si = ff::stable_image(single_morphism(a, o, "stable-image"), o.maxIter);
  if (o.format == "structured") {
    std::cout << json{{"iterations", si.iterations},
                      {"stabilized", si.stabilized},
                      {"subgroup", subgroup_json(si.graph)}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "# iterations " << si.iterations << " stabilized "
              << (si.stabilized ? "yes" : "no") << '\n';
    print_subgroup_text(std::cout, si.graph, false);
  }
  return si.stabilized ? 0 : 2;
}

int run_retract(const Options& o) {
  ff::Alphabet a(o.rank);
  ff::SubgroupGraph g = graph_arg(a, o);
  ff::RetractionSearch rs = ff::find_retraction(g, o.retractionBound);
  if (o.format == "structured") {
    json j{{"found", rs.retraction.has_value()},
           {"complete", rs.complete},
           {"bound", rs.bound}};
    j["retraction"] = rs.retraction ? morphism_json(*rs.retraction) : json(nullptr);
    std::cout << j.dump(2) << '\n';
  } else if (rs.retraction) {
    std::cout << ff::to_string(*rs.retraction);
  } else if (rs.complete) {
    std::cout << "no retraction with images up to length " << rs.bound << '\n';
  } else {
    std::cout << "search truncated before exhausting images up to length " << rs.bound
              << '\n';
  }
  if (rs.retraction) return 0;
  return rs.complete ? 2 : 3;
}

int run_acl_member(const Options& o) {
  ff::Alphabet a(o.rank);
  ff::SubgroupGraph g = graph_arg(a, o);
  ff::Word w = ff::parse_word(a, o.word);
  std::vector<ff::Morphism> gens = ff::stabilizer_generators(a, ff::basis(g));
  bool in = true;
  for (const ff::Morphism& m : gens)
    if (!(ff::apply(m, w) == w)) in = false;
  emit_yesno(o, "member", in);
  return 0;
}

ff::BudgetRecord budget_from(const Options& o) {
  ff::BudgetRecord b;
  b.maxWordLen = o.maxLen;
  b.fringeVertexCap = o.fringeCap;
  b.retractionBound = o.retractionBound;
  b.stableImageMaxIter = o.maxIter;
  return b;
}

int emit_verdict(const Options& o, const ff::Verdict& v) {
  if (o.format == "structured")
    std::cout << ff::verdict_to_json(v).dump(2) << '\n';
  else
    std::cout << ff::render_text(v);
  return v.soundness == ff::Soundness::Evidence ? 2 : 0;
}

int run_auto_fixed(const Options& o) {
  ff::Alphabet a(o.rank);
  return emit_verdict(o, ff::auto_fixed_verdict(graph_arg(a, o), budget_from(o)));
}

int run_endo_fixed(const Options& o) {
  ff::Alphabet a(o.rank);
  return emit_verdict(o, ff::endo_fixed_verdict(graph_arg(a, o), budget_from(o)));
}

int run_reduce_family(const Options& o) {
  ff::Alphabet a(o.rank);
  std::vector<ff::Morphism> fam = family_from(a, o);
  std::vector<ff::Morphism> kept = ff::reduce_family(a, fam, o.maxLen);
  if (o.format == "structured") {
    json arr = json::array();
    for (const ff::Morphism& m : kept) arr.push_back(morphism_json(m));
    std::cout << json{{"family", arr}}.dump(2) << '\n';
    return 0;
  }
  std::cout << "# kept " << kept.size() << " of " << fam.size() << '\n';
  for (const ff::Morphism& m : kept) std::cout << ff::to_string(m) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "subgroups of free groups: folded graphs, Whitehead minimization, fixed "
      "subgroups of endomorphism families"};
  app.require_subcommand(1);
  app.footer(
      "words use a..z for generators, A..Z for inverses, 1 for the identity;\n"
      "morphisms are lines like \"a -> ab\" joined by ';' or newlines.\n"
      "exit codes: 0 definitive answer, 1 bad input, 2 inconclusive within\n"
      "budgets, 3 a budget stopped the computation.");

  Options o;
  int exitCode = 0;

  auto add_rank = [&](CLI::App* c) {
    c->add_option("--rank", o.rank, "ambient free group rank")
        ->required()
        ->check(CLI::Range(1, 26));
  };
  auto add_gens = [&](CLI::App* c) {
    c->add_option("--gens", o.gens, "comma separated generator words");
    c->add_option("--gens-file", o.gensFile, "file with one generator word per line");
  };
  auto add_gens2 = [&](CLI::App* c) {
    c->add_option("--gens2", o.gens2, "second generator list");
    c->add_option("--gens2-file", o.gens2File, "file for the second generator list");
  };
  auto add_word = [&](CLI::App* c) {
    c->add_option("--word", o.word, "word to test")->required();
  };
  auto add_family = [&](CLI::App* c) {
    c->add_option("--morphism", o.morphisms, "morphism given inline, repeatable");
    c->add_option("--morphism-file", o.morphismFiles, "file holding one morphism, repeatable");
  };
  auto add_format = [&](CLI::App* c, bool dot) {
    c->add_option("--format", o.format, dot ? "text, structured or dot" : "text or structured")
        ->check(CLI::IsMember(dot ? std::vector<std::string>{"text", "structured", "dot"}
                                  : std::vector<std::string>{"text", "structured"}));
  };

  struct Cmd {
    CLI::App* app;
    int (*run)(const Options&);
  };
  std::vector<Cmd> cmds;
  auto sub = [&](const char* name, const char* help, int (*run)(const Options&)) {
    CLI::App* c = app.add_subcommand(name, help);
    cmds.push_back({c, run});
    return c;
  };

  {
    CLI::App* c = sub("fold", "fold generators into a subgroup graph", run_fold);
    add_rank(c), add_gens(c), add_format(c, true);
  }
  {
    CLI::App* c = sub("basis", "free basis of the subgroup", run_basis);
    add_rank(c), add_gens(c), add_format(c, false);
  }
  {
    CLI::App* c = sub("member", "test membership of a word", run_member);
    add_rank(c), add_gens(c), add_word(c), add_format(c, false);
  }
  {
    CLI::App* c = sub("intersect", "intersection of two subgroups", run_intersect);
    add_rank(c), add_gens(c), add_gens2(c), add_format(c, true);
  }
  {
    CLI::App* c = sub("fringe", "overgroups obtained by merging vertices", run_fringe);
    add_rank(c), add_gens(c), add_format(c, false);
    c->add_option("--fringe-cap", o.fringeCap, "largest graph the fringe will expand");
  }
  {
    CLI::App* c = sub("ae", "algebraic extensions of the subgroup", run_ae);
    add_rank(c), add_gens(c), add_format(c, false);
    c->add_option("--fringe-cap", o.fringeCap, "largest graph the fringe will expand");
  }
  {
    CLI::App* c = sub("freefactor", "is the first subgroup a free factor of the second",
                      run_freefactor);
    add_rank(c), add_gens(c), add_gens2(c), add_format(c, false);
  }
  {
    CLI::App* c = sub("stab", "automorphisms fixing every listed word", run_stab);
    add_rank(c), add_gens(c), add_format(c, false);
  }
  {
    CLI::App* c = sub("fix", "subgroup generated by short words fixed by the family", run_fix);
    add_rank(c), add_family(c), add_format(c, true);
    c->add_option("--max-len", o.maxLen, "longest fixed word collected");
  }
  {
    CLI::App* c = sub("stable-image", "iterate a morphism until its image stops shrinking",
                      run_stable_image);
    add_rank(c), add_family(c), add_format(c, false);
    c->add_option("--max-iter", o.maxIter, "iteration cutoff");
  }
  {
    CLI::App* c = sub("retract", "search for a retraction onto the subgroup", run_retract);
    add_rank(c), add_gens(c), add_format(c, false);
    c->add_option("--retraction-bound", o.retractionBound, "longest image tried");
  }
  {
    CLI::App* c = sub("acl-member",
                      "is the word inside the automorphism closure of the subgroup",
                      run_acl_member);
    add_rank(c), add_gens(c), add_word(c), add_format(c, false);
  }
  {
    CLI::App* c = sub("auto-fixed", "is the subgroup fixed by a family of automorphisms",
                      run_auto_fixed);
    add_rank(c), add_gens(c), add_format(c, false);
    c->add_option("--max-len", o.maxLen, "word length budget");
    c->add_option("--fringe-cap", o.fringeCap, "largest graph the fringe will expand");
    c->add_option("--retraction-bound", o.retractionBound, "longest retraction image tried");
  }
  {
    CLI::App* c = sub("endo-fixed", "is the subgroup fixed by a family of endomorphisms",
                      run_endo_fixed);
    add_rank(c), add_gens(c), add_format(c, false);
    c->add_option("--max-len", o.maxLen, "word length budget");
    c->add_option("--fringe-cap", o.fringeCap, "largest graph the fringe will expand");
    c->add_option("--retraction-bound", o.retractionBound, "longest retraction image tried");
  }
  {
    CLI::App* c = sub("reduce-family", "drop morphisms that do not change the fixed subgroup",
                      run_reduce_family);
    add_rank(c), add_family(c), add_format(c, false);
    c->add_option("--max-len", o.maxLen, "word length used to compare fixed sets");
  }

  try {
    app.parse(argc, argv);
    for (const Cmd& c : cmds)
      if (c.app->parsed()) exitCode = c.run(o);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const ff::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const ff::NotASubgroupError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ff::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ff::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ff::AlphabetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ff::Error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
  return exitCode;
}
