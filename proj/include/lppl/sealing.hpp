#pragma once

#include <string>
#include <vector>

#include "lppl/dates.hpp"

namespace lppl {

struct Digests {
    std::string md5;     // 32 lowercase hex chars
    std::string sha256;  // 64
    std::string sha512;  // 128
};

// Raw-byte digests matching GNU md5sum/sha256sum/sha512sum output.
Digests hash_document(const std::string& path);

struct LedgerEntry {
    Date publication_date;
    std::string document_name;
    std::string md5;
    std::string sha256;
    std::string sha512;
    std::string asset_label;  // optional
};

// Append-only commitment record. Entries are never mutated or removed; the
// version is the entry count.
class Ledger {
public:
    Ledger() = default;

    int version() const { return static_cast<int>(entries_.size()); }
    const std::vector<LedgerEntry>& entries() const { return entries_; }

    // Throws LedgerError on a malformed entry or a duplicate document name.
    void append(LedgerEntry entry);

    // Tab-separated, one record per line: date name md5 sha256 sha512 [asset].
    std::string to_tsv() const;
    static Ledger from_tsv(const std::string& text);

    static Ledger load(const std::string& path);

    // Refuses to overwrite a file whose entries are not a prefix of ours; the
    // replaced version is kept alongside as "<path>.v<N>" when requested.
    void save(const std::string& path, bool keep_previous_version = true) const;

private:
    std::vector<LedgerEntry> entries_;
};

enum class VerifyStatus { ok, mismatch, missing };

struct VerifyEntry {
    std::string document_name;
    VerifyStatus status = VerifyStatus::ok;
    std::vector<std::string> mismatched;  // which of md5/sha256/sha512 differ
};

struct VerificationReport {
    std::vector<VerifyEntry> entries;
    bool pass = false;  // true iff every entry is ok
};

// Re-hashes every ledgered document found under the directory. Discrepancies
// are report content, never exceptions.
VerificationReport verify(const Ledger& ledger, const std::string& directory);

// coreutils-compatible check files (md5sums.txt, sha256sums.txt,
// sha512sums.txt) usable with `md5sum -c` and friends.
void write_check_files(const Ledger& ledger, const std::string& directory);

}  // namespace lppl
