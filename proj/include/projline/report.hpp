#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace projline {

enum class errc {
    composite_modulus,
    malformed_table,
    invalid_field,
    degenerate_points,
    zero_coefficient,
    non_composable,
    parse_error,
    malformed_groupoid,
    structurally_invalid,
    identity_scalar,
    not_endo,
    axiom_violation,
    self_conjugate,
    too_few_points,
    reference_not_unit,
    incompatible_scalar_map,
    verification_failure,
    not_a_field,
    unsupported_four_point,
    size_out_of_range,
    infeasible_search,
    io_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::composite_modulus: return "CompositeModulus";
        case errc::malformed_table: return "MalformedTable";
        case errc::invalid_field: return "InvalidField";
        case errc::degenerate_points: return "DegeneratePoints";
        case errc::zero_coefficient: return "ZeroCoefficient";
        case errc::non_composable: return "NonComposable";
        case errc::parse_error: return "ParseError";
        case errc::malformed_groupoid: return "MalformedGroupoid";
        case errc::structurally_invalid: return "StructurallyInvalid";
        case errc::identity_scalar: return "IdentityScalar";
        case errc::not_endo: return "NotEndo";
        case errc::axiom_violation: return "AxiomViolation";
        case errc::self_conjugate: return "SelfConjugate";
        case errc::too_few_points: return "TooFewPoints";
        case errc::reference_not_unit: return "ReferenceNotUnit";
        case errc::incompatible_scalar_map: return "IncompatibleScalarMap";
        case errc::verification_failure: return "VerificationFailure";
        case errc::not_a_field: return "NotAField";
        case errc::unsupported_four_point: return "UnsupportedFourPoint";
        case errc::size_out_of_range: return "SizeOutOfRange";
        case errc::infeasible_search: return "InfeasibleSearch";
        case errc::io_error: return "IoError";
    }
    return "Unknown";
}

// One named check with a one-line witness for the first failure found.
struct check_result {
    std::string name;
    bool passed = true;
    std::string witness;
};

struct validation_report {
    std::vector<check_result> checks;

    bool clean() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    const check_result* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    bool passed(const std::string& name) const {
        const check_result* c = find(name);
        return c != nullptr && c->passed;
    }

    std::vector<check_result> failures() const {
        std::vector<check_result> out;
        for (const auto& c : checks)
            if (!c.passed) out.push_back(c);
        return out;
    }

    std::string first_witness() const {
        for (const auto& c : checks)
            if (!c.passed) return c.name + ": " + c.witness;
        return {};
    }
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    error(errc code, const std::string& what, validation_report rep)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what),
          code_(code),
          report_(std::move(rep)) {}

    errc code() const { return code_; }
    const std::optional<validation_report>& report() const { return report_; }

private:
    errc code_;
    std::optional<validation_report> report_;
};

}  // namespace projline
