#ifndef INQ_SIGNATURE_HPP
#define INQ_SIGNATURE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace inq {

// ── Signature ───────────────────────────────────────────────────────────────
// An ordered, duplicate-free list of proposition names. The empty signature
// is allowed (formulas over bottom only).

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<int> index_of(const std::string& name) const;

    // Registers a new proposition; used by the open-signature parser mode.
    int add(const std::string& name);

    bool operator==(const Signature& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
};

}  // namespace inq

#endif
