#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "smkit/hn_extension.hpp"
#include "smkit/metrics.hpp"
#include "smkit/presentation.hpp"
#include "smkit/smachine.hpp"
#include "smkit/word_problem.hpp"

namespace smkit {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, std::size_t line, const std::string& what)
      : std::runtime_error(where + ":" + std::to_string(line) + ": " + what),
        line_number(line) {}
  std::size_t line_number;
};

struct MachineFile {
  std::string name;
  SMachine machine;
};

// machine description, line oriented:
//   machine <name>
//   k = <int>
//   Y<i>: tok ...          (i = 1..k)
//   Q<i>: tok ...          (i = 1..k+1)
//   rule <name>: <U> -> <V> ; <U> -> <V> ; ...
//   end
// '#' starts a comment. Declared rules are the positive ones.
MachineFile read_smf(std::istream& in, const std::string& source_name);
MachineFile read_smf_file(const std::string& path);

// presentation files:
//   presentation <name>
//   gens: tok ...
//   class <tag>: tok ...   (tags: theta q<i> y kappa<i> rho d b a)
//   rel[<kind>]: <word>
//   end
GroupPresentation read_gp(std::istream& in, const std::string& source_name);
GroupPresentation read_gp_file(const std::string& path);
void write_gp(std::ostream& out, const GroupPresentation& g);

// embedding profiles:
//   profile <name>
//   A: tok ...
//   B: tok ...
//   alpha: tok | delta: tok | omega: tok
//   z0: tok ... | ... | z4: tok ...
//   end
EmbeddingProfile read_emb(std::istream& in, const std::string& source_name);
EmbeddingProfile read_emb_file(const std::string& path);
void write_emb(std::ostream& out, const EmbeddingProfile& prof);

// derivations:
//   start: <word>
//   step: <pos> <orbit> <shift> <sign>
//   end: <word>
Derivation read_drv(std::istream& in, const std::string& source_name,
                    const AlphabetRef& alphabet);
void write_drv(std::ostream& out, const Derivation& d);

// CSV exports
void write_growth_csv(std::ostream& out, const GrowthTable& t);
void write_profile_csv(std::ostream& out, const DehnProfile& p);
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& trials);

std::string csv_quote(const std::string& s);

}  // namespace smkit
