import { defineConfig } from 'vitest/config';

export default defineConfig({
    server: {
        proxy: {
            '/datasets': 'http://127.0.0.1:8765',
            '/sessions': { target: 'http://127.0.0.1:8765', ws: true },
        },
    },
    test: {
        environment: 'node',
        include: ['tests/**/*.test.ts'],
    },
});
