#pragma once

#include <string>
#include <utility>
#include <vector>

#include "courant/scalar.hpp"

namespace courant {

// Coefficient vector on a fixed frame.  The tag keeps sections of different
// bundles apart.
template <class Tag>
class FrameVector {
 public:
  FrameVector() = default;
  explicit FrameVector(int size) : c_(size) {}
  explicit FrameVector(std::vector<Scalar> c) : c_(std::move(c)) {}
  static FrameVector basis(int size, int i) {
    FrameVector v(size);
    v.c_[i] = 1;
    return v;
  }

  int size() const { return static_cast<int>(c_.size()); }
  Scalar& operator[](int i) { return c_[i]; }
  const Scalar& operator[](int i) const { return c_[i]; }
  const std::vector<Scalar>& components() const { return c_; }

  bool is_zero() const {
    for (const auto& s : c_) {
      if (!s.is_zero()) return false;
    }
    return true;
  }

  FrameVector& operator+=(const FrameVector& o) {
    for (int i = 0; i < size(); ++i) {
      if (!o.c_[i].is_zero()) c_[i] += o.c_[i];
    }
    return *this;
  }
  FrameVector& operator-=(const FrameVector& o) {
    for (int i = 0; i < size(); ++i) {
      if (!o.c_[i].is_zero()) c_[i] -= o.c_[i];
    }
    return *this;
  }
  FrameVector operator-() const {
    FrameVector v = *this;
    for (auto& s : v.c_) s = -s;
    return v;
  }
  friend FrameVector operator+(FrameVector a, const FrameVector& b) { return a += b; }
  friend FrameVector operator-(FrameVector a, const FrameVector& b) { return a -= b; }
  friend FrameVector operator*(const Scalar& f, FrameVector v) {
    if (f.is_one()) return v;
    for (auto& s : v.c_) {
      if (!s.is_zero()) s *= f;
    }
    return v;
  }
  friend bool operator==(const FrameVector& a, const FrameVector& b) = default;

  std::string to_string() const {
    std::string out = "(";
    for (int i = 0; i < size(); ++i) {
      if (i) out += ", ";
      out += c_[i].to_string();
    }
    return out + ")";
  }

 private:
  std::vector<Scalar> c_;
};

struct SectionTag;
struct BSectionTag;
struct DualBSectionTag;

using Section = FrameVector<SectionTag>;
using BSection = FrameVector<BSectionTag>;
using DualBSection = FrameVector<DualBSectionTag>;

}  // namespace courant
