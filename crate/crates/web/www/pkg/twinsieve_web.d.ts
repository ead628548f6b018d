/* tslint:disable */
/* eslint-disable */

/**
 * `f(0..=t_max; z)` next to the leading-order asymptotic.
 */
export function seriesProfile(z: number, t_max: number): string;

/**
 * Correction factor and prediction for each sieving exponent.
 */
export function thetaSweep(x: number, thetas: Float64Array, t_max: number): string;

/**
 * Correction factor and prediction for every truncation in `t_min..=t_max`.
 */
export function truncationSweep(x: number, theta: number, t_min: number, t_max: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly seriesProfile: (a: number, b: number) => [number, number, number, number];
    readonly thetaSweep: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly truncationSweep: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
