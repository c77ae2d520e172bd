#include "smkit/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace smkit {

namespace {

struct LineReader {
  std::istream& in;
  std::string source;
  std::size_t line_no = 0;

  // next non-empty, non-comment line, stripped
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::size_t b = raw.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      std::size_t e = raw.find_last_not_of(" \t\r");
      out = raw.substr(b, e - b + 1);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source, line_no, what);
  }
};

std::vector<std::string> split_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// splits "key: rest" and returns true when the key matches
bool keyed(const std::string& line, const std::string& key, std::string& rest) {
  if (line.compare(0, key.size(), key) != 0) return false;
  std::size_t p = key.size();
  while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
  if (p >= line.size() || line[p] != ':') return false;
  rest = line.substr(p + 1);
  return true;
}

}  // namespace

MachineFile read_smf(std::istream& in, const std::string& source_name) {
  LineReader r{in, source_name};
  std::string line;
  if (!r.next(line) || split_tokens(line).size() != 2 ||
      split_tokens(line)[0] != "machine")
    r.fail("expected 'machine <name>'");
  std::string name = split_tokens(line)[1];

  if (!r.next(line)) r.fail("expected 'k = <int>'");
  auto ktoks = split_tokens(line);
  if (ktoks.size() != 3 || ktoks[0] != "k" || ktoks[1] != "=")
    r.fail("expected 'k = <int>'");
  std::size_t k = std::stoul(ktoks[2]);

  std::vector<std::vector<std::string>> tapes(k), states(k + 1);
  for (std::size_t i = 1; i <= k; ++i) {
    std::string rest;
    if (!r.next(line) || !keyed(line, "Y" + std::to_string(i), rest))
      r.fail("expected 'Y" + std::to_string(i) + ": ...'");
    tapes[i - 1] = split_tokens(rest);
  }
  for (std::size_t i = 1; i <= k + 1; ++i) {
    std::string rest;
    if (!r.next(line) || !keyed(line, "Q" + std::to_string(i), rest))
      r.fail("expected 'Q" + std::to_string(i) + ": ...'");
    states[i - 1] = split_tokens(rest);
    if (states[i - 1].empty())
      r.fail("Q" + std::to_string(i) + " must not be empty");
  }

  Hardware hw(std::move(tapes), std::move(states));
  Report hr = hw.validate();
  if (!hr.ok()) r.fail("invalid hardware: " + hr.joined());

  std::vector<SRule> rules;
  while (r.next(line)) {
    if (line == "end") {
      try {
        return MachineFile{name, SMachine(std::move(hw), std::move(rules))};
      } catch (const SMachineError& e) {
        r.fail(e.what());
      }
    }
    auto toks = split_tokens(line);
    if (toks.empty() || toks[0] != "rule") r.fail("expected 'rule' or 'end'");
    auto colon = line.find(':');
    if (colon == std::string::npos) r.fail("missing ':' in rule line");
    auto head = split_tokens(line.substr(0, colon));
    if (head.size() != 2) r.fail("expected 'rule <name>: ...'");
    SRule rule;
    rule.name = head[1];
    std::string body = line.substr(colon + 1);
    std::istringstream clauses(body);
    std::string clause;
    while (std::getline(clauses, clause, ';')) {
      auto arrow = clause.find("->");
      if (arrow == std::string::npos) r.fail("rule clause missing '->'");
      try {
        RulePart part;
        part.lhs = parse_word(hw.alphabet(), clause.substr(0, arrow));
        part.rhs = parse_word(hw.alphabet(), clause.substr(arrow + 2));
        rule.parts.push_back(std::move(part));
      } catch (const WordError& e) {
        r.fail(e.what());
      }
    }
    Report rr = validate_rule(hw, rule);
    if (!rr.ok()) r.fail(rr.joined());
    rules.push_back(std::move(rule));
  }
  r.fail("missing 'end'");
}

MachineFile read_smf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_smf(in, path);
}

GroupPresentation read_gp(std::istream& in, const std::string& source_name) {
  LineReader r{in, source_name};
  std::string line;
  if (!r.next(line) || split_tokens(line).size() != 2 ||
      split_tokens(line)[0] != "presentation")
    r.fail("expected 'presentation <name>'");
  std::string name = split_tokens(line)[1];

  std::string rest;
  if (!r.next(line) || !keyed(line, "gens", rest)) r.fail("expected 'gens: ...'");
  AlphabetRef gens;
  try {
    gens = Alphabet::make(split_tokens(rest));
  } catch (const WordError& e) {
    r.fail(e.what());
  }
  GroupPresentation g(name, gens);

  std::vector<std::string> a_marks;
  while (r.next(line)) {
    if (line == "end") {
      for (const auto& s : a_marks) {
        auto idx = gens->index_of(s);
        if (!idx) r.fail("class a lists unknown generator '" + s + "'");
        g.partition().mark_a(*idx);
      }
      return g;
    }
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    if (toks[0] == "class") {
      auto colon = line.find(':');
      if (colon == std::string::npos) r.fail("missing ':' in class line");
      auto head = split_tokens(line.substr(0, colon));
      if (head.size() != 2) r.fail("expected 'class <tag>: ...'");
      const std::string& tag = head[1];
      for (const std::string& s : split_tokens(line.substr(colon + 1))) {
        auto idx = gens->index_of(s);
        if (!idx) r.fail("class '" + tag + "' lists unknown generator '" + s + "'");
        if (tag == "theta")
          g.partition().assign(*idx, GenTag{GenClass::Theta, 0, false});
        else if (tag == "y")
          g.partition().assign(*idx, GenTag{GenClass::Tape, 0, false});
        else if (tag == "rho")
          g.partition().assign(*idx, GenTag{GenClass::Rho, 0, false});
        else if (tag == "d")
          g.partition().assign(*idx, GenTag{GenClass::D, 0, false});
        else if (tag == "b")
          g.partition().assign(*idx, GenTag{GenClass::B, 0, false});
        else if (tag == "a")
          a_marks.push_back(s);
        else if (tag.size() > 1 && tag[0] == 'q')
          g.partition().assign(
              *idx, GenTag{GenClass::State, std::uint32_t(std::stoul(tag.substr(1))),
                           false});
        else if (tag.size() > 5 && tag.compare(0, 5, "kappa") == 0)
          g.partition().assign(
              *idx, GenTag{GenClass::Kappa, std::uint32_t(std::stoul(tag.substr(5))),
                           false});
        else
          r.fail("unknown class tag '" + tag + "'");
      }
      continue;
    }
    if (toks[0].compare(0, 4, "rel[") == 0) {
      auto close = line.find(']');
      auto colon = line.find(':');
      if (close == std::string::npos || colon == std::string::npos || colon < close)
        r.fail("expected 'rel[<kind>]: <word>'");
      std::string kind_name = line.substr(4, close - 4);
      auto kind = relator_kind_from_name(kind_name);
      if (!kind) r.fail("unknown relator kind '" + kind_name + "'");
      try {
        Word w = parse_word(gens, line.substr(colon + 1));
        g.add_relator(w, *kind);
      } catch (const WordError& e) {
        r.fail(e.what());
      } catch (const PresentationError& e) {
        r.fail(e.what());
      }
      continue;
    }
    r.fail("unexpected line '" + line + "'");
  }
  r.fail("missing 'end'");
}

GroupPresentation read_gp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_gp(in, path);
}

void write_gp(std::ostream& out, const GroupPresentation& g) {
  out << "presentation " << (g.name().empty() ? "unnamed" : g.name()) << "\n";
  out << "gens:";
  for (const auto& s : g.generators()->symbols()) out << ' ' << s;
  out << "\n";

  auto emit_class = [&](const std::string& tag, GenClass cls, std::uint32_t index) {
    std::string row;
    for (const auto& [gen, t] : g.partition().tags())
      if (t.cls == cls && t.index == index)
        row += " " + g.generators()->symbol(gen);
    if (!row.empty()) out << "class " << tag << ":" << row << "\n";
  };
  emit_class("theta", GenClass::Theta, 0);
  std::size_t comps = g.partition().state_components();
  for (std::size_t i = 1; i <= comps; ++i)
    emit_class("q" + std::to_string(i), GenClass::State, std::uint32_t(i));
  emit_class("y", GenClass::Tape, 0);
  std::size_t max_kappa = 0;
  for (const auto& [gen, t] : g.partition().tags())
    if (t.cls == GenClass::Kappa && t.index > max_kappa) max_kappa = t.index;
  for (std::size_t i = 1; i <= max_kappa; ++i)
    emit_class("kappa" + std::to_string(i), GenClass::Kappa, std::uint32_t(i));
  emit_class("rho", GenClass::Rho, 0);
  emit_class("d", GenClass::D, 0);
  emit_class("b", GenClass::B, 0);
  {
    std::string row;
    for (const auto& [gen, t] : g.partition().tags())
      if (t.cls == GenClass::Tape && t.in_a) row += " " + g.generators()->symbol(gen);
    if (!row.empty()) out << "class a:" << row << "\n";
  }

  for (const RelatorOrbit& r : g.relators())
    out << "rel[" << relator_kind_name(r.kind)
        << "]: " << format_word(r.orbit.canonical()) << "\n";
  out << "end\n";
}

EmbeddingProfile read_emb(std::istream& in, const std::string& source_name) {
  LineReader r{in, source_name};
  std::string line;
  if (!r.next(line) || split_tokens(line).size() != 2 ||
      split_tokens(line)[0] != "profile")
    r.fail("expected 'profile <name>'");
  EmbeddingProfile prof;
  prof.name = split_tokens(line)[1];
  prof.zwords.resize(5);

  auto single = [&](const std::string& rest, const char* what) {
    auto toks = split_tokens(rest);
    if (toks.size() != 1) r.fail(std::string(what) + " needs exactly one token");
    return toks[0];
  };

  bool saw[10] = {};
  while (r.next(line)) {
    if (line == "end") {
      for (int i = 0; i < 10; ++i)
        if (!saw[i]) r.fail("incomplete profile (missing lines)");
      Report pr = prof.validate();
      if (!pr.ok()) r.fail("invalid profile: " + pr.joined());
      return prof;
    }
    std::string rest;
    if (keyed(line, "A", rest)) {
      prof.a_letters = split_tokens(rest);
      saw[0] = true;
    } else if (keyed(line, "B", rest)) {
      prof.b_letters = split_tokens(rest);
      saw[1] = true;
    } else if (keyed(line, "alpha", rest)) {
      prof.alpha = single(rest, "alpha");
      saw[2] = true;
    } else if (keyed(line, "delta", rest)) {
      prof.delta = single(rest, "delta");
      saw[3] = true;
    } else if (keyed(line, "omega", rest)) {
      prof.omega = single(rest, "omega");
      saw[4] = true;
    } else {
      bool matched = false;
      for (int z = 0; z < 5; ++z) {
        if (keyed(line, "z" + std::to_string(z), rest)) {
          prof.zwords[z] = split_tokens(rest);
          saw[5 + z] = true;
          matched = true;
          break;
        }
      }
      if (!matched) r.fail("unexpected line '" + line + "'");
    }
  }
  r.fail("missing 'end'");
}

EmbeddingProfile read_emb_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_emb(in, path);
}

void write_emb(std::ostream& out, const EmbeddingProfile& prof) {
  out << "profile " << (prof.name.empty() ? "unnamed" : prof.name) << "\n";
  auto row = [&](const std::string& key, const std::vector<std::string>& toks) {
    out << key << ":";
    for (const auto& t : toks) out << ' ' << t;
    out << "\n";
  };
  row("A", prof.a_letters);
  row("B", prof.b_letters);
  out << "alpha: " << prof.alpha << "\n";
  out << "delta: " << prof.delta << "\n";
  out << "omega: " << prof.omega << "\n";
  for (std::size_t z = 0; z < prof.zwords.size(); ++z)
    row("z" + std::to_string(z), prof.zwords[z]);
  out << "end\n";
}

Derivation read_drv(std::istream& in, const std::string& source_name,
                    const AlphabetRef& alphabet) {
  LineReader r{in, source_name};
  std::string line, rest;
  if (!r.next(line) || !keyed(line, "start", rest)) r.fail("expected 'start: <word>'");
  Derivation d{parse_word(alphabet, rest), {}, Word(alphabet)};
  bool have_end = false;
  while (r.next(line)) {
    if (keyed(line, "step", rest)) {
      auto toks = split_tokens(rest);
      if (toks.size() != 4) r.fail("step needs '<pos> <orbit> <shift> <sign>'");
      Derivation::Step s;
      s.position = std::stoul(toks[0]);
      s.orbit = std::stoul(toks[1]);
      s.shift = std::uint32_t(std::stoul(toks[2]));
      int sign = std::stoi(toks[3]);
      if (sign != 1 && sign != -1) r.fail("sign must be 1 or -1");
      s.sign = sign;
      d.steps.push_back(s);
      continue;
    }
    if (keyed(line, "end", rest)) {
      d.end = parse_word(alphabet, rest);
      have_end = true;
      continue;
    }
    r.fail("unexpected line '" + line + "'");
  }
  if (!have_end) r.fail("missing 'end:' line");
  return d;
}

void write_drv(std::ostream& out, const Derivation& d) {
  out << "start: " << format_word(d.start) << "\n";
  for (const auto& s : d.steps)
    out << "step: " << s.position << ' ' << s.orbit << ' ' << s.shift << ' '
        << s.sign << "\n";
  out << "end: " << format_word(d.end) << "\n";
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_growth_csv(std::ostream& out, const GrowthTable& t) {
  out << "n,value,exact\n";
  for (const auto& [n, entry] : t.entries)
    out << n << ',' << entry.first << ',' << (entry.second ? 1 : 0) << "\n";
}

void write_profile_csv(std::ostream& out, const DehnProfile& p) {
  out << "n,value,exact\n";
  for (const auto& [n, entry] : p.table)
    out << n << ',' << entry.max_area << ',' << (entry.exact ? 1 : 0) << "\n";
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& trials) {
  out << "seed,u,v,L,R,holds\n";
  for (const auto& t : trials) {
    if (!t.completed) continue;  // discarded trials carry no geodesic
    out << t.seed << ',' << csv_quote(t.u) << ',' << csv_quote(t.v) << ','
        << t.geodesic << ',' << t.weighted << ',' << (t.holds ? 1 : 0) << "\n";
  }
}

}  // namespace smkit
