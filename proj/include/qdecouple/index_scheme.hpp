#pragma once

// Index conventions for the fundamental representation of U_q sl(N) and
// U_q so(N): index lists, the half-integer weights rho_i, and the value
// eta_i = delta_i^1 - delta_i^{-1} used by the even-N bookkeeping.

#include <stdexcept>
#include <string>
#include <vector>

namespace qd {

enum class CaseTag { sl, so };

inline const char* to_string(CaseTag c) { return c == CaseTag::sl ? "sl" : "so"; }

struct IndexScheme {
    CaseTag case_tag;
    int N = 0;
    int rank = 0;              // n = floor(N/2), so case only
    std::vector<int> indices;  // sl: 1..N; so: -n..-1,(0),1..n

    static IndexScheme make(CaseTag c, int N) {
        if (c == CaseTag::sl && N < 2) throw std::invalid_argument("sl scheme requires N >= 2");
        if (c == CaseTag::so && N < 3) throw std::invalid_argument("so scheme requires N >= 3");
        if (N > 8) throw std::invalid_argument("scheme size out of supported range");
        IndexScheme s;
        s.case_tag = c;
        s.N = N;
        if (c == CaseTag::sl) {
            for (int i = 1; i <= N; ++i) s.indices.push_back(i);
        } else {
            s.rank = N / 2;
            for (int i = -s.rank; i <= s.rank; ++i) {
                if (i == 0 && N % 2 == 0) continue;
                s.indices.push_back(i);
            }
        }
        return s;
    }

    bool odd() const { return N % 2 != 0; }

    bool valid_index(int i) const {
        if (case_tag == CaseTag::sl) return i >= 1 && i <= N;
        if (i == 0) return odd();
        return i >= -rank && i <= rank;
    }

    void check_index(int i) const {
        if (!valid_index(i)) throw std::invalid_argument("index " + std::to_string(i) + " not in scheme");
    }

    // 2*rho_i as an integer; rho is the so weight vector, zero for sl.
    // The list (n-1/2, ..., 1/2, 0, -1/2, ..., 1/2-n) runs against the
    // index list -n..n in order, so rho_{-n} = n - 1/2 and rho_n = 1/2 - n;
    // this is the reading under which the braid matrix satisfies the braid
    // relation and P^2 is central.
    int rho2(int i) const {
        if (case_tag == CaseTag::sl) return 0;
        check_index(i);
        if (i == 0) return 0;
        int sign = i > 0 ? -1 : 1;
        int a = i > 0 ? i : -i;
        return odd() ? sign * (2 * a - 1) : sign * (2 * (a - 1));
    }

    // eta_i = delta_i^1 - delta_i^{-1}
    static int eta(int i) { return (i == 1) ? 1 : (i == -1 ? -1 : 0); }

    std::string name() const { return std::string(to_string(case_tag)) + std::to_string(N); }
};

}  // namespace qd
