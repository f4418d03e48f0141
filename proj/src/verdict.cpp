#include "biharm/verdict.hpp"

#include "biharm/errors.hpp"

namespace biharm {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Harmonic:
      return "Harmonic";
    case Verdict::ProperBiharmonic:
      return "ProperBiharmonic";
    case Verdict::NotBiharmonic:
      return "NotBiharmonic";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::Harmonic, Verdict::ProperBiharmonic, Verdict::NotBiharmonic, Verdict::Inconclusive}) {
    if (s == to_string(v)) return v;
  }
  throw ParseError("unknown verdict '" + s + "'");
}

}  // namespace biharm
