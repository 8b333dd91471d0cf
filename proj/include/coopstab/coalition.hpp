#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "coopstab/errors.hpp"

namespace coopstab {

inline constexpr int kMaxPlayers = 31;

// A subset of the players {1..n}. Player i is stored in bit (i - 1), so the
// integer value of `mask` is the canonical key used in cost tables and files.
class Coalition {
 public:
  using Mask = std::uint32_t;

  constexpr Coalition() = default;
  constexpr Coalition(int players, Mask mask) : mask_(mask), players_(players) {}

  static Coalition grand(int players) {
    check_players(players);
    return Coalition(players, full_mask(players));
  }
  static Coalition singleton(int players, int player) {
    check_player(players, player);
    return Coalition(players, Mask{1} << (player - 1));
  }
  static Coalition of(int players, std::initializer_list<int> members) {
    check_players(players);
    Mask m = 0;
    for (int p : members) {
      check_player(players, p);
      m |= Mask{1} << (p - 1);
    }
    return Coalition(players, m);
  }
  // Checked construction from a table key.
  static Coalition from_mask(int players, Mask mask) {
    check_players(players);
    if ((mask & ~full_mask(players)) != 0)
      throw DomainError("coalition mask has bits outside 1..n");
    return Coalition(players, mask);
  }

  static constexpr Mask full_mask(int players) {
    return players >= 32 ? ~Mask{0} : (Mask{1} << players) - 1;
  }

  constexpr Mask mask() const { return mask_; }
  constexpr int players() const { return players_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool is_grand() const { return mask_ == full_mask(players_); }
  constexpr bool contains(int player) const {
    return player >= 1 && player <= players_ && ((mask_ >> (player - 1)) & 1u);
  }

  Coalition without(int player) const {
    check_player(players_, player);
    return Coalition(players_, mask_ & ~(Mask{1} << (player - 1)));
  }
  Coalition complement() const {
    return Coalition(players_, full_mask(players_) & ~mask_);
  }

  // Members in ascending order (1-based player indices).
  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (Mask m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  friend constexpr bool operator==(Coalition a, Coalition b) = default;

 private:
  static void check_players(int players) {
    if (players < 1 || players > kMaxPlayers)
      throw DomainError("player count must be in 1..31");
  }
  static void check_player(int players, int player) {
    if (player < 1 || player > players) throw DomainError("player index out of range");
  }

  Mask mask_ = 0;
  int players_ = 0;
};

}  // namespace coopstab
