#pragma once

#include <string>

namespace biharm {

enum class Verdict { Harmonic, ProperBiharmonic, NotBiharmonic, Inconclusive };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

}  // namespace biharm
