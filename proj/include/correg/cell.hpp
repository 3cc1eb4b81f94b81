#pragma once

#include <string>

#include "correg/segment.hpp"

namespace correg {

// One slot of an alignment column. In alignment rows a cell is a sound or a
// gap; in sites the third state means the doculect has no word in the cognate
// set (or was masked); in patterns the same state marks an unresolved slot.
class CellValue {
public:
    enum class Kind : unsigned char { Sound, Gap, Missing };

    CellValue() : kind_(Kind::Missing) {}

    static CellValue sound(Segment seg) { return CellValue(Kind::Sound, std::move(seg)); }
    static CellValue gap() { return CellValue(Kind::Gap, {}); }
    static CellValue missing() { return CellValue(Kind::Missing, {}); }

    Kind kind() const { return kind_; }
    bool is_sound() const { return kind_ == Kind::Sound; }
    bool is_gap() const { return kind_ == Kind::Gap; }
    bool is_missing() const { return kind_ == Kind::Missing; }
    // Sounds and gaps are concrete correspondence values; missing is a wildcard.
    bool concrete() const { return kind_ != Kind::Missing; }

    const Segment& segment() const { return seg_; }

    // Display token: the sound itself, "-" for gaps, "Ø" for missing slots.
    std::string display() const {
        switch (kind_) {
            case Kind::Sound: return seg_.token;
            case Kind::Gap: return std::string(kGapSymbol);
            default: return std::string(kMissingSymbol);
        }
    }

    bool operator==(const CellValue& other) const {
        if (kind_ != other.kind_) return false;
        return kind_ != Kind::Sound || seg_.token == other.seg_.token;
    }

private:
    CellValue(Kind kind, Segment seg) : kind_(kind), seg_(std::move(seg)) {}

    Kind kind_;
    Segment seg_;
};

}  // namespace correg
