#include "sumsq/packing.hpp"

#include <string>

namespace sumsq {

std::int64_t ss_value(const Profile& profile) {
    std::int64_t total = 0;
    for (int h = 1; h < profile.bin_size(); ++h) {
        std::int64_t c = profile.count(h);
        total += c * c;
    }
    return total;
}

PlacementDelta placement_delta(const Profile& profile, int h, int s) {
    int b = profile.bin_size();
    if (s < 1 || s > b) throw IllegalPlacement("size out of range");
    if (h < 0 || h + s > b) throw IllegalPlacement("level overflows bin");
    if (h > 0 && profile.count(h) == 0) {
        throw IllegalPlacement("no open bin at level " + std::to_string(h));
    }
    std::int64_t d = profile.count(h + s) - profile.count(h);
    std::int64_t delta;
    if (h == 0 && s == b) {
        delta = 0;  // new bin filled outright, profile untouched
    } else if (h == 0 || h == b - s) {
        delta = 2 * d + 1;
    } else {
        delta = 2 * d + 2;
    }
    return PlacementDelta{h, d, delta};
}

std::vector<int> legal_levels(const Profile& profile, int s) {
    std::vector<int> levels{0};
    for (int h = 1; h <= profile.bin_size() - s; ++h) {
        if (profile.count(h) > 0) levels.push_back(h);
    }
    return levels;
}

std::vector<int> dead_end_levels(int bin_size, const std::vector<int>& u) {
    std::vector<char> reach(static_cast<std::size_t>(bin_size) + 1, 0);
    reach[0] = 1;
    for (int item : u) {
        if (item < 1 || item > bin_size) continue;
        for (int v = item; v <= bin_size; ++v) {
            if (reach[static_cast<std::size_t>(v - item)]) reach[static_cast<std::size_t>(v)] = 1;
        }
    }
    std::vector<int> dead;
    for (int h = 1; h < bin_size; ++h) {
        if (reach[static_cast<std::size_t>(h)] && !reach[static_cast<std::size_t>(bin_size - h)]) {
            dead.push_back(h);
        }
    }
    return dead;
}

Packing::Packing(int bin_size)
    : bin_size_(bin_size),
      profile_(bin_size),
      stacks_(static_cast<std::size_t>(bin_size) + 1) {}

void Packing::place_common(int h, int s) {
    PlacementDelta delta = placement_delta(profile_, h, s);
    std::uint32_t bin;
    if (h == 0) {
        bin = next_bin_id_++;
        ++open_bins_;
        open_gap_units_ += bin_size_;
    } else {
        bin = stacks_[static_cast<std::size_t>(h)].back();
        stacks_[static_cast<std::size_t>(h)].pop_back();
        profile_.add(h, -1);
    }
    int target = h + s;
    open_gap_units_ -= s;
    if (target == bin_size_) {
        --open_bins_;
        ++closed_bins_;
    } else {
        stacks_[static_cast<std::size_t>(target)].push_back(bin);
        profile_.add(target, +1);
    }
    ss_ += delta.delta_ss;
    total_size_ += s;
    ++items_placed_;
}

void Packing::place(int h, int s) { place_common(h, s); }

void Packing::place_imaginary(int h, int s) {
    place_common(h, s);
    ++imaginary_items_;
    imaginary_volume_ += s;
}

void Packing::close_all_open() {
    for (int h = 1; h < bin_size_; ++h) {
        std::int64_t c = profile_.count(h);
        if (c == 0) continue;
        closed_gap_units_ += c * (bin_size_ - h);
        open_gap_units_ -= c * (bin_size_ - h);
        closed_bins_ += c;
        open_bins_ -= c;
        profile_.add(h, -c);
        stacks_[static_cast<std::size_t>(h)].clear();
    }
    ss_ = 0;
}

std::uint32_t Packing::top_bin(int h) const {
    const auto& stack = stacks_[static_cast<std::size_t>(h)];
    if (stack.empty()) throw IllegalPlacement("no bin at level " + std::to_string(h));
    return stack.back();
}

std::size_t Packing::stack_size(int h) const {
    return stacks_[static_cast<std::size_t>(h)].size();
}

}  // namespace sumsq
