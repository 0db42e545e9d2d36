#pragma once

namespace accretion {

// Probes report three-valued answers: a numerical experiment can support or
// refute a property at its working resolution, or decline to call it.
enum class Verdict { Yes, No, Inconclusive };

inline const char* str(Verdict v) {
    switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "inconclusive";
    }
}

} // namespace accretion
