#pragma once

#include <stdexcept>
#include <string>

namespace antireg {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NonSymmetric : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class DegenerateW : public Error {
public:
    using Error::Error;
};

class SingularCapacitor : public Error {
public:
    using Error::Error;
};

class StepTooLarge : public Error {
public:
    using Error::Error;
};

class MaxIters : public Error {
public:
    using Error::Error;
};

class TargetUnreachable : public Error {
public:
    using Error::Error;
};

class NonFiniteLoss : public Error {
public:
    using Error::Error;
};

class ZeroBaseline : public Error {
public:
    using Error::Error;
};

class DegenerateCurvature : public Error {
public:
    using Error::Error;
};

class AllZero : public Error {
public:
    using Error::Error;
};

class MalformedLine : public Error {
public:
    MalformedLine(const std::string& what, long line) : Error(what), line_number(line) {}
    long line_number;
};

class WrongArity : public Error {
public:
    WrongArity(const std::string& what, long line) : Error(what), line_number(line) {}
    long line_number;
};

class BadMagic : public Error {
public:
    using Error::Error;
};

class CountMismatch : public Error {
public:
    using Error::Error;
};

class Truncated : public Error {
public:
    using Error::Error;
};

class TooFewSamples : public Error {
public:
    using Error::Error;
};

class MissingBaseline : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace antireg
