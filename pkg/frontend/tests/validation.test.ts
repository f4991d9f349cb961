import { describe, expect, it } from "vitest";
import { validateDays, validateLikert, validateMood } from "../src/validation.js";

describe("validateLikert", () => {
  it("accepts every value of the 0-10 scale", () => {
    for (let v = 0; v <= 10; v++) {
      expect(validateLikert(v, "eleven")).toBeNull();
    }
  });

  it("blocks out-of-range values before any request is made", () => {
    expect(validateLikert(11, "eleven")).toMatch(/out of range/);
    expect(validateLikert(-1, "eleven")).toMatch(/out of range/);
    expect(validateLikert(0, "five")).toMatch(/out of range/);
    expect(validateLikert(6, "five")).toMatch(/out of range/);
  });

  it("blocks non-integer values", () => {
    expect(validateLikert(4.5, "eleven")).toMatch(/whole number/);
    expect(validateLikert(Number.NaN, "five")).toMatch(/whole number/);
  });
});

describe("validateDays", () => {
  it("accepts non-negative finite numbers, including fractions", () => {
    expect(validateDays(0)).toBeNull();
    expect(validateDays(2.5)).toBeNull();
  });

  it("rejects negatives and non-numbers", () => {
    expect(validateDays(-1)).not.toBeNull();
    expect(validateDays(Number.NaN)).not.toBeNull();
    expect(validateDays(Infinity)).not.toBeNull();
  });
});

describe("validateMood", () => {
  it("uses the 1-5 scale", () => {
    expect(validateMood(1)).toBeNull();
    expect(validateMood(5)).toBeNull();
    expect(validateMood(0)).not.toBeNull();
    expect(validateMood(6)).not.toBeNull();
  });
});
