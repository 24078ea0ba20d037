#include "sumsq/bucket_list.hpp"

#include <stdexcept>

namespace sumsq {

DeltaBucketList::DeltaBucketList(int bin_size, int step)
    : bin_size_(bin_size),
      step_(step),
      forbidden_(static_cast<std::size_t>(bin_size) + 1, 0),
      handles_(static_cast<std::size_t>(bin_size) + 1) {
    if (step < 1 || step > bin_size) throw std::invalid_argument("bad step size");
}

void DeltaBucketList::set_forbidden(std::vector<char> forbidden_levels) {
    forbidden_ = std::move(forbidden_levels);
    forbidden_.resize(static_cast<std::size_t>(bin_size_) + 1, 0);
}

bool DeltaBucketList::is_member(const Profile& profile, int h) const {
    if (h < 0 || h + step_ > bin_size_) return false;
    if (h > 0 && profile.count(h) == 0) return false;
    int target = h + step_;
    if (target < bin_size_ && forbidden_[static_cast<std::size_t>(target)]) return false;
    return true;
}

std::int64_t DeltaBucketList::doubled_delta(const Profile& profile, int h) const {
    auto doubled = [&](int level) -> std::int64_t {
        if (level == 0) return 1;
        if (level == bin_size_) return -1;
        return 2 * profile.count(level);
    };
    return doubled(h + step_) - doubled(h);
}

void DeltaBucketList::remove_level(int h) {
    auto& handle = handles_[static_cast<std::size_t>(h)];
    if (!handle) return;
    auto [bucket, member] = *handle;
    bucket->members.erase(member);
    if (bucket->members.empty()) buckets_.erase(bucket);
    handle.reset();
}

void DeltaBucketList::insert_level(int h, std::int64_t d2) {
    auto it = buckets_.begin();
    while (it != buckets_.end() && it->d2 < d2) ++it;
    if (it == buckets_.end() || it->d2 != d2) {
        it = buckets_.insert(it, Bucket{d2, {}});
    }
    it->members.push_front(h);
    handles_[static_cast<std::size_t>(h)] = {it, it->members.begin()};
}

void DeltaBucketList::refresh_level(const Profile& profile, int h) {
    if (h < 0 || h > bin_size_) return;
    remove_level(h);
    if (is_member(profile, h)) insert_level(h, doubled_delta(profile, h));
}

void DeltaBucketList::rebuild(const Profile& profile) {
    buckets_.clear();
    for (auto& handle : handles_) handle.reset();
    for (int h = bin_size_ - step_; h >= 0; --h) {
        if (is_member(profile, h)) insert_level(h, doubled_delta(profile, h));
    }
}

int DeltaBucketList::choose() const {
    if (buckets_.empty()) return -1;
    return buckets_.front().members.front();
}

void DeltaBucketList::apply_placement(const Profile& profile, int h, int placed_size) {
    int changed[2] = {h, h + placed_size == bin_size_ ? -1 : h + placed_size};
    for (int g : changed) {
        if (g < 1 || g >= bin_size_) continue;
        refresh_level(profile, g);
        refresh_level(profile, g - step_);
    }
}

std::map<std::int64_t, std::set<int>> DeltaBucketList::contents() const {
    std::map<std::int64_t, std::set<int>> out;
    for (const Bucket& bucket : buckets_) {
        out[bucket.d2].insert(bucket.members.begin(), bucket.members.end());
    }
    return out;
}

}  // namespace sumsq
