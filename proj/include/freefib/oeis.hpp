#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "freefib/term.hpp"

namespace freefib::oeis {

struct SequenceDescriptor {
  std::string id;
  std::int64_t offset = 0;
  std::string description;
};

const std::vector<SequenceDescriptor>& supported();
bool is_supported(const std::string& id);
const SequenceDescriptor& descriptor(const std::string& id);

/// First `count` terms of a supported sequence.
std::vector<Term> emit(const std::string& id, std::size_t count);

/// Write a b-file: one "index value" line per term starting at the
/// sequence's offset, newline-terminated, no trailing whitespace.
void export_bfile(const std::string& id, std::size_t count,
                  const std::filesystem::path& destination);

}  // namespace freefib::oeis
