#include "lppl/sealing.hpp"

#include <openssl/evp.h>

#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lppl/errors.hpp"

namespace fs = std::filesystem;

namespace lppl {

namespace {

class EvpDigest {
public:
    explicit EvpDigest(const EVP_MD* md) : ctx_(EVP_MD_CTX_new()) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_, md, nullptr) != 1) {
            throw Error("failed to initialize digest context");
        }
    }
    ~EvpDigest() { EVP_MD_CTX_free(ctx_); }
    EvpDigest(const EvpDigest&) = delete;
    EvpDigest& operator=(const EvpDigest&) = delete;

    void update(const char* data, std::size_t len) {
        if (EVP_DigestUpdate(ctx_, data, len) != 1) throw Error("digest update failed");
    }

    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> raw{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_, raw.data(), &len) != 1) {
            throw Error("digest finalization failed");
        }
        static const char* digits = "0123456789abcdef";
        std::string out(2 * len, '0');
        for (unsigned int i = 0; i < len; ++i) {
            out[2 * i] = digits[raw[i] >> 4];
            out[2 * i + 1] = digits[raw[i] & 0xf];
        }
        return out;
    }

private:
    EVP_MD_CTX* ctx_;
};

bool is_hex(const std::string& s, std::size_t len) {
    if (s.size() != len) return false;
    for (char c : s) {
        if (!std::isxdigit(static_cast<unsigned char>(c)) ||
            (std::isalpha(static_cast<unsigned char>(c)) && !std::islower(static_cast<unsigned char>(c)))) {
            return false;
        }
    }
    return true;
}

void check_entry(const LedgerEntry& e) {
    if (e.document_name.empty()) throw LedgerError("ledger entry lacks a document name");
    if (!is_hex(e.md5, 32)) throw LedgerError(e.document_name + ": md5 must be 32 lowercase hex chars");
    if (!is_hex(e.sha256, 64)) throw LedgerError(e.document_name + ": sha256 must be 64 lowercase hex chars");
    if (!is_hex(e.sha512, 128)) throw LedgerError(e.document_name + ": sha512 must be 128 lowercase hex chars");
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

Digests hash_document(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error("cannot read " + path);

    EvpDigest md5(EVP_md5());
    EvpDigest sha256(EVP_sha256());
    EvpDigest sha512(EVP_sha512());

    std::array<char, 65536> buf;
    while (file) {
        file.read(buf.data(), buf.size());
        std::streamsize n = file.gcount();
        if (n > 0) {
            md5.update(buf.data(), static_cast<std::size_t>(n));
            sha256.update(buf.data(), static_cast<std::size_t>(n));
            sha512.update(buf.data(), static_cast<std::size_t>(n));
        }
    }
    return {md5.hex(), sha256.hex(), sha512.hex()};
}

void Ledger::append(LedgerEntry entry) {
    check_entry(entry);
    for (const auto& e : entries_) {
        if (e.document_name == entry.document_name) {
            throw LedgerError("document '" + entry.document_name +
                              "' is already ledgered; entries are immutable");
        }
    }
    entries_.push_back(std::move(entry));
}

std::string Ledger::to_tsv() const {
    std::string out;
    for (const auto& e : entries_) {
        out += e.publication_date.iso();
        out += '\t';
        out += e.document_name;
        out += '\t';
        out += e.md5;
        out += '\t';
        out += e.sha256;
        out += '\t';
        out += e.sha512;
        if (!e.asset_label.empty()) {
            out += '\t';
            out += e.asset_label;
        }
        out += '\n';
    }
    return out;
}

Ledger Ledger::from_tsv(const std::string& text) {
    Ledger ledger;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() < 5 || fields.size() > 6) {
            throw LedgerError("ledger line " + std::to_string(line_no) +
                              ": expected 5 or 6 tab-separated fields");
        }
        LedgerEntry e;
        e.publication_date = Date::parse(fields[0]);
        e.document_name = fields[1];
        e.md5 = fields[2];
        e.sha256 = fields[3];
        e.sha512 = fields[4];
        if (fields.size() == 6) e.asset_label = fields[5];
        ledger.append(std::move(e));
    }
    return ledger;
}

Ledger Ledger::load(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw LedgerError("cannot open ledger " + path);
    std::ostringstream ss;
    ss << file.rdbuf();
    return from_tsv(ss.str());
}

void Ledger::save(const std::string& path, bool keep_previous_version) const {
    if (fs::exists(path)) {
        Ledger prior = load(path);
        if (prior.version() > version()) {
            throw LedgerError("saving would drop entries from " + path);
        }
        for (int i = 0; i < prior.version(); ++i) {
            const LedgerEntry& a = prior.entries_[i];
            const LedgerEntry& b = entries_[i];
            if (a.document_name != b.document_name || a.md5 != b.md5 ||
                a.sha256 != b.sha256 || a.sha512 != b.sha512 ||
                a.publication_date != b.publication_date) {
                throw LedgerError("entry " + std::to_string(i + 1) + " of " + path +
                                  " would be mutated; the ledger is append-only");
            }
        }
        if (keep_previous_version && prior.version() < version()) {
            fs::copy_file(path, path + ".v" + std::to_string(prior.version()),
                          fs::copy_options::overwrite_existing);
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw LedgerError("cannot write ledger " + path);
    out << to_tsv();
}

VerificationReport verify(const Ledger& ledger, const std::string& directory) {
    VerificationReport report;
    report.pass = true;
    for (const auto& e : ledger.entries()) {
        VerifyEntry v;
        v.document_name = e.document_name;
        const fs::path file = fs::path(directory) / e.document_name;
        if (!fs::exists(file)) {
            v.status = VerifyStatus::missing;
        } else {
            Digests d = hash_document(file.string());
            if (d.md5 != e.md5) v.mismatched.push_back("md5");
            if (d.sha256 != e.sha256) v.mismatched.push_back("sha256");
            if (d.sha512 != e.sha512) v.mismatched.push_back("sha512");
            v.status = v.mismatched.empty() ? VerifyStatus::ok : VerifyStatus::mismatch;
        }
        if (v.status != VerifyStatus::ok) report.pass = false;
        report.entries.push_back(std::move(v));
    }
    return report;
}

void write_check_files(const Ledger& ledger, const std::string& directory) {
    const fs::path dir(directory);
    fs::create_directories(dir);
    std::ofstream md5(dir / "md5sums.txt", std::ios::binary);
    std::ofstream sha256(dir / "sha256sums.txt", std::ios::binary);
    std::ofstream sha512(dir / "sha512sums.txt", std::ios::binary);
    if (!md5 || !sha256 || !sha512) throw LedgerError("cannot write check files in " + directory);
    for (const auto& e : ledger.entries()) {
        md5 << e.md5 << "  " << e.document_name << '\n';
        sha256 << e.sha256 << "  " << e.document_name << '\n';
        sha512 << e.sha512 << "  " << e.document_name << '\n';
    }
}

}  // namespace lppl
