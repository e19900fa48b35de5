#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace nfv {

/// Dense integer identifier tagged by the entity it names. Values index
/// directly into the owning container.
template <class Tag>
class StrongId {
 public:
  using value_type = std::int32_t;

  constexpr StrongId() = default;
  constexpr explicit StrongId(value_type v) : value_(v) {}
  constexpr explicit StrongId(std::size_t v) : value_(static_cast<value_type>(v)) {}

  [[nodiscard]] constexpr value_type value() const { return value_; }
  [[nodiscard]] constexpr std::size_t index() const { return static_cast<std::size_t>(value_); }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;

 private:
  value_type value_{-1};
};

struct NodeTag {};
struct LinkTag {};
struct NfTypeTag {};

using NodeId = StrongId<NodeTag>;
using LinkId = StrongId<LinkTag>;
using NfTypeId = StrongId<NfTypeTag>;

}  // namespace nfv

template <class Tag>
struct std::hash<nfv::StrongId<Tag>> {
  std::size_t operator()(nfv::StrongId<Tag> id) const noexcept {
    return std::hash<std::int32_t>{}(id.value());
  }
};
