#ifndef SUMSQ_PACKERS_HPP
#define SUMSQ_PACKERS_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sumsq/packing.hpp"
#include "sumsq/rational.hpp"

namespace sumsq {

// ---- decision rules ---------------------------------------------------
// All rules return a member of legal_levels(profile, s) (after their own
// filters) and break ties in favor of the highest level; the empty-bin
// option counts as level 0, the lowest.

// Minimize the ss(P) increase.
int ss_choose(const Profile& profile, int s);

// Like ss_choose but never creates a level in `forbidden` unless every legal
// move would; then a new bin is started regardless.
int ssd_choose(const Profile& profile, int s, const std::vector<char>& forbidden);

// Minimize sum of counts^r, exact integer arithmetic (integer r >= 2).
int srs_choose_int(const Profile& profile, int s, int r);

// Non-integer exponent: extended precision with a 1e-12 relative tie margin.
int srs_choose_real(const Profile& profile, int s, long double r);

// Limit r -> infinity rule.
int sinfty_choose(const Profile& profile, int s);

// Minimize the count of the resulting level (full bins count 0).
int sminh_choose(const Profile& profile, int s);

// Maximize the count of the source level (empty bins count 0).
int smaxh_choose(const Profile& profile, int s);

// Perfectly fill a bin when possible, otherwise ss_choose.
int perfect_ss_choose(const Profile& profile, int s);

// Positive per-level weights w(h), a function of (h, B).
struct LevelWeight {
    std::string id;
    std::vector<Rational> w;  // index 1..B-1

    const Rational& at(int h) const { return w[static_cast<std::size_t>(h)]; }
    // ids: unit, gap (B-h), gap2 ((B-h)^2), invh (1/h)
    static LevelWeight make(const std::string& id, int bin_size);
};

// Minimize the exact change in sum w(h) * N(h)^2.
int weighted_ss_choose(const Profile& profile, int s, const LevelWeight& weight);

// Fullest bin that fits, else a new bin.
int best_fit_choose(const Profile& profile, int s);

// Index of the first bin (creation order) whose level leaves room for s, or
// -1 for a new bin. Levels of closed bins equal bin_size.
int first_fit_choose(const std::vector<int>& bin_levels, int s, int bin_size);

// Converts a level set into a dense membership mask of length bin_size+1.
std::vector<char> level_mask(int bin_size, const std::vector<int>& levels);

// ---- packers -----------------------------------------------------------

// A packer owns its policy state and drives one Packing; processing n items
// performs exactly n placements (tuned variants add imaginary ones).
class OnlinePacker {
  public:
    virtual ~OnlinePacker() = default;
    virtual const std::string& id() const { return id_; }
    virtual void pack(Packing& packing, int size) = 0;
    // The level this packer would give the next real item of `size`, without
    // mutating state. Used by adversaries to anticipate responses.
    virtual int preview(const Packing& packing, int size) const {
        return ss_choose(packing.profile(), size);
    }

  protected:
    explicit OnlinePacker(std::string id) : id_(std::move(id)) {}
    std::string id_;
};

class SsPacker final : public OnlinePacker {
  public:
    SsPacker() : OnlinePacker("ss") {}
    void pack(Packing& p, int s) override { p.place(ss_choose(p.profile(), s), s); }
};

class SsdPacker final : public OnlinePacker {
  public:
    SsdPacker(int bin_size, const std::vector<int>& dead)
        : OnlinePacker("ss_d"), forbidden_(level_mask(bin_size, dead)) {}
    void pack(Packing& p, int s) override {
        p.place(ssd_choose(p.profile(), s, forbidden_), s);
    }
    int preview(const Packing& p, int s) const override {
        return ssd_choose(p.profile(), s, forbidden_);
    }

  private:
    std::vector<char> forbidden_;
};

// SS': recomputes the dead-end level set whenever a new size appears, then
// packs with the constrained rule.
class SsPrimePacker final : public OnlinePacker {
  public:
    explicit SsPrimePacker(int bin_size);
    void pack(Packing& p, int s) override;
    int preview(const Packing& p, int s) const override;
    const std::vector<int>& seen_sizes() const { return seen_; }
    const std::vector<char>& forbidden() const { return forbidden_; }

  private:
    int bin_size_;
    std::vector<char> seen_mask_;
    std::vector<int> seen_;
    std::vector<char> forbidden_;
};

class SrsPacker final : public OnlinePacker {
  public:
    explicit SrsPacker(int int_r);
    explicit SrsPacker(long double real_r);
    void pack(Packing& p, int s) override { p.place(preview(p, s), s); }
    int preview(const Packing& p, int s) const override {
        return integral_ ? srs_choose_int(p.profile(), s, int_r_)
                         : srs_choose_real(p.profile(), s, real_r_);
    }

  private:
    bool integral_;
    int int_r_ = 0;
    long double real_r_ = 0;
};

class SinfPacker final : public OnlinePacker {
  public:
    SinfPacker() : OnlinePacker("sinf") {}
    void pack(Packing& p, int s) override { p.place(sinfty_choose(p.profile(), s), s); }
    int preview(const Packing& p, int s) const override {
        return sinfty_choose(p.profile(), s);
    }
};

class SminhPacker final : public OnlinePacker {
  public:
    SminhPacker() : OnlinePacker("sminh") {}
    void pack(Packing& p, int s) override { p.place(sminh_choose(p.profile(), s), s); }
    int preview(const Packing& p, int s) const override {
        return sminh_choose(p.profile(), s);
    }
};

class SmaxhPacker final : public OnlinePacker {
  public:
    SmaxhPacker() : OnlinePacker("smaxh") {}
    void pack(Packing& p, int s) override { p.place(smaxh_choose(p.profile(), s), s); }
    int preview(const Packing& p, int s) const override {
        return smaxh_choose(p.profile(), s);
    }
};

class PerfectSsPacker final : public OnlinePacker {
  public:
    PerfectSsPacker() : OnlinePacker("perfect_ss") {}
    void pack(Packing& p, int s) override {
        p.place(perfect_ss_choose(p.profile(), s), s);
    }
    int preview(const Packing& p, int s) const override {
        return perfect_ss_choose(p.profile(), s);
    }
};

class WeightedSsPacker final : public OnlinePacker {
  public:
    explicit WeightedSsPacker(LevelWeight weight)
        : OnlinePacker("wss:" + weight.id), weight_(std::move(weight)) {}
    void pack(Packing& p, int s) override {
        p.place(weighted_ss_choose(p.profile(), s, weight_), s);
    }
    int preview(const Packing& p, int s) const override {
        return weighted_ss_choose(p.profile(), s, weight_);
    }

  private:
    LevelWeight weight_;
};

class BestFitPacker final : public OnlinePacker {
  public:
    BestFitPacker() : OnlinePacker("bf") {}
    void pack(Packing& p, int s) override { p.place(best_fit_choose(p.profile(), s), s); }
    int preview(const Packing& p, int s) const override {
        return best_fit_choose(p.profile(), s);
    }
};

// First Fit keeps its own creation-ordered bin list; it is the only policy
// that needs more than the profile.
class FirstFitPacker final : public OnlinePacker {
  public:
    FirstFitPacker() : OnlinePacker("ff") {}
    void pack(Packing& p, int s) override;
    int preview(const Packing& p, int s) const override;
    const std::vector<int>& bin_levels() const { return levels_; }

  private:
    std::vector<int> levels_;
};

// ApproxSS with staleness bound delta = t*J: per-size local counts refreshed
// lazily through per-level tick counters, per-size priority queues over the
// local placement deltas.
class ApproxSsPacker final : public OnlinePacker {
  public:
    ApproxSsPacker(int bin_size, int t, int num_sizes);
    void pack(Packing& p, int s) override;

    int staleness_bound() const { return t_ * configured_sizes_; }
    // max over seen sizes and levels of |N(h) - N_s(h)|, for invariant checks
    std::int64_t worst_staleness(const Packing& p) const;

  private:
    struct SizeState {
        int size = 0;
        std::vector<std::int64_t> local;   // local counts, index 0..B
        std::set<std::pair<std::int64_t, int>> queue;  // (rank, -level)
        std::vector<char> queued;          // per level
        std::vector<std::int64_t> rank;    // last rank used, per level
    };

    int size_index(int s) const;
    void register_size(const Packing& p, int s);
    std::int64_t local_rank(const SizeState& st, int h) const;
    void repair(SizeState& st, int h);
    void after_count_change(int level);

    int bin_size_;
    int t_;
    int configured_sizes_;
    std::vector<std::int64_t> ticks_;  // c(h), index 0..B
    std::vector<SizeState> states_;
    std::vector<int> index_of_size_;  // size -> index+1, 0 = unseen
    const Profile* current_profile_ = nullptr;
};

// Wrapper that restarts ApproxSS with a larger size budget whenever a new
// size would exceed it; every restart closes all open bins.
class AdaptiveApproxSsPacker final : public OnlinePacker {
  public:
    AdaptiveApproxSsPacker(int bin_size, int t, int initial_sizes = 5);
    void pack(Packing& p, int s) override;
    int configured_sizes() const { return configured_; }
    int restarts() const { return restarts_; }
    const ApproxSsPacker& inner() const { return *inner_; }

  private:
    int bin_size_;
    int t_;
    int configured_;
    int restarts_ = 0;
    std::vector<char> seen_;
    int seen_count_ = 0;
    std::unique_ptr<ApproxSsPacker> inner_;
};

}  // namespace sumsq

#endif
