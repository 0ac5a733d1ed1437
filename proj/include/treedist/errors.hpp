// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace treedist {

/* Base class for all library errors. */
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Input validation. */
class NotATreeError : public Error { using Error::Error; };
class NonPositiveLengthError : public Error { using Error::Error; };
class DuplicateLabelError : public Error { using Error::Error; };
class UnknownVertexError : public Error { using Error::Error; };
class InvalidEdgeError : public Error { using Error::Error; };
class InvalidVertexError : public Error { using Error::Error; };
class EmptySubsetError : public Error { using Error::Error; };
class NotNestedError : public Error { using Error::Error; };
class SubsetTooSmallError : public Error { using Error::Error; };
class TooSmallError : public Error { using Error::Error; };
class TooLargeError : public Error { using Error::Error; };
class NotUnitLengthsError : public Error { using Error::Error; };
class DisconnectedError : public Error { using Error::Error; };
class BadMomentumError : public Error { using Error::Error; };
class NoSuchRootError : public Error { using Error::Error; };

/* Linear algebra. */
class NotSquareError : public Error { using Error::Error; };
class NotSymmetricError : public Error { using Error::Error; };
class SingularError : public Error { using Error::Error; };
class DimensionMismatchError : public Error { using Error::Error; };

/* Text input. */
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line), column_(column) {}
  explicit ParseError(const std::string& msg) : Error(msg), line_(0), column_(0) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_, column_;
};

/* A caller violated a documented precondition. */
class PreconditionError : public Error { using Error::Error; };

/* An exact identity that must hold mathematically failed to hold. */
class IdentityViolationError : public Error { using Error::Error; };

}  // namespace treedist
