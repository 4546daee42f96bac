#pragma once

#include <stdexcept>

namespace sawmw {

// Fixed tensor order of the composite space: MW photon mode, transmon, SAW
// phonon mode. Flat index = (i_mw * n_qubit + i_qubit) * n_saw + i_saw.
enum class Subsystem { mw = 0, qubit = 1, saw = 2 };

struct HilbertConfig {
    int n_mw = 4;
    int n_qubit = 3;
    int n_saw = 4;

    int dim() const { return n_mw * n_qubit * n_saw; }

    int subsystem_dim(Subsystem s) const {
        switch (s) {
            case Subsystem::mw: return n_mw;
            case Subsystem::qubit: return n_qubit;
            case Subsystem::saw: return n_saw;
        }
        throw std::logic_error("bad subsystem");
    }

    // |g>, |e>, |f> must exist and each mode needs at least a two-level ladder.
    void validate() const {
        if (n_mw < 2) throw std::invalid_argument("HilbertConfig: n_mw must be >= 2");
        if (n_saw < 2) throw std::invalid_argument("HilbertConfig: n_saw must be >= 2");
        if (n_qubit < 3) throw std::invalid_argument("HilbertConfig: n_qubit must be >= 3");
    }

    int index(int i_mw, int i_qubit, int i_saw) const {
        return (i_mw * n_qubit + i_qubit) * n_saw + i_saw;
    }
};

}  // namespace sawmw
