// Value-set dynamic programming over the whole family of n-variable Go
// equations at once.
//
// V_1(x, z) = { x -> z } and V_p(x, z) = union over y of
// { v ^ (y -> z) : v in V_{p-1}(x, y) }, i.e. the values of all length-p
// arrow chains from x to z.  After computing pass p the scan tests
// n = p + 1: every v in V_p(x, z) must satisfy v ^ (z -> x) <= (x -> z).
// A violation gives the first failing n; if instead V_p = V_{p-1} the sets
// have stabilized and every larger n passes too.  Each pass costs at most
// |L|^4 elementary set insertions.
#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bitset.hpp"
#include "lattice.hpp"

namespace omlkit {

struct GoScanResult {
    enum class Outcome { FirstFail, ConvergedAllPass, CutoffReached };
    Outcome outcome = Outcome::CutoffReached;
    int n = -1;                // FirstFail: the smallest failing n
    int converged_pass = -1;   // ConvergedAllPass: pass where V stabilized
    int max_n = 0;
    int passes = 0;            // number of DP passes computed (V_2, V_3, ...)
    std::vector<uint64_t> ops_per_pass;
};

/** Stepwise scanner; useful for inspecting value sets and for continuing
 * past a failure diagnostically. */
class GoDpScanner {
  public:
    explicit GoDpScanner(const OmlLattice& l) : l_(l), m_(l.size())
    {
        arrow_.resize(static_cast<std::size_t>(m_) * m_);
        for (int x = 0; x < m_; ++x)
            for (int z = 0; z < m_; ++z) arrow_[x * m_ + z] = sasaki_arrow(l, x, z);
        v_.assign(static_cast<std::size_t>(m_) * m_, Bitset(m_));
        for (int x = 0; x < m_; ++x)
            for (int z = 0; z < m_; ++z) v_[x * m_ + z].set(arrow_[x * m_ + z]);
        pass_ = 1;
    }

    int pass() const { return pass_; }
    const Bitset& values(int x, int z) const { return v_[x * m_ + z]; }

    struct StepOutcome {
        int n_checked = 0;     // the n this step decided
        bool failed = false;
        bool converged = false;
        uint64_t ops = 0;
    };

    /** Computes the next pass and checks n = pass + 1. */
    StepOutcome step()
    {
        std::vector<Bitset> nv(static_cast<std::size_t>(m_) * m_, Bitset(m_));
        uint64_t ops = 0;
        for (int x = 0; x < m_; ++x)
            for (int y = 0; y < m_; ++y) {
                const Bitset& src = v_[x * m_ + y];
                src.for_each([&](int vv) {
                    for (int z = 0; z < m_; ++z) {
                        nv[x * m_ + z].set(l_.meet(vv, arrow_[y * m_ + z]));
                        ++ops;
                    }
                });
            }
        StepOutcome out;
        out.ops = ops;
        out.converged = nv == v_;
        ++pass_;
        out.n_checked = pass_ + 1;
        for (int x = 0; x < m_ && !out.failed; ++x)
            for (int z = 0; z < m_ && !out.failed; ++z) {
                int back = arrow_[z * m_ + x];
                int target = arrow_[x * m_ + z];
                out.failed = nv[x * m_ + z].for_each_until(
                    [&](int vv) { return !l_.leq(l_.meet(vv, back), target); });
            }
        v_ = std::move(nv);
        return out;
    }

  private:
    const OmlLattice& l_;
    int m_;
    std::vector<int> arrow_;
    std::vector<Bitset> v_;
    int pass_;
};

/** Scans n = 3, 4, ... up to max_n. */
inline GoScanResult go_scan(const OmlLattice& l, int max_n = 100)
{
    if (max_n < 3) throw std::invalid_argument("go_scan requires max_n >= 3");
    GoScanResult r;
    r.max_n = max_n;
    GoDpScanner scan(l);
    while (scan.pass() + 2 <= max_n) {
        auto st = scan.step();
        ++r.passes;
        r.ops_per_pass.push_back(st.ops);
        if (st.failed) {
            r.outcome = GoScanResult::Outcome::FirstFail;
            r.n = st.n_checked;
            return r;
        }
        if (st.converged) {
            r.outcome = GoScanResult::Outcome::ConvergedAllPass;
            r.converged_pass = scan.pass();
            return r;
        }
    }
    r.outcome = GoScanResult::Outcome::CutoffReached;
    r.n = max_n;
    return r;
}

/** Scans several lattices, optionally in parallel; results keep input order. */
inline std::vector<GoScanResult> go_batch(const std::vector<OmlLattice>& ls,
                                          int max_n = 100, int jobs = 1)
{
    std::vector<GoScanResult> out(ls.size());
    if (jobs <= 1 || ls.size() <= 1) {
        for (std::size_t i = 0; i < ls.size(); ++i) out[i] = go_scan(ls[i], max_n);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= ls.size()) break;
            out[i] = go_scan(ls[i], max_n);
        }
    };
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    return out;
}

}   // namespace omlkit
